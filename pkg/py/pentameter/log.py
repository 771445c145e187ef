import os
import logging

#- one logger per level, named pentameter.<LEVEL>

_loggers = dict()

_LEVELS = {
    'DEBUG' : logging.DEBUG,
    'INFO' : logging.INFO,
    'WARN' : logging.WARNING,
    'WARNING' : logging.WARNING,
    'ERROR' : logging.ERROR,
    'FATAL' : logging.CRITICAL,
    'CRITICAL' : logging.CRITICAL,
}

def get_logger(level=None):
    '''
    Returns a logger for the given level, default from $PENTAMETER_LOGLEVEL or INFO
    '''
    if level is None:
        level = os.getenv('PENTAMETER_LOGLEVEL', 'INFO')
    level = level.upper()

    if level not in _LEVELS :
        raise ValueError('Unknown log level {}; should be DEBUG/INFO/WARNING/ERROR/CRITICAL'.format(level))
    loglevel = _LEVELS[level]

    if level not in _loggers:
        logger = logging.getLogger('pentameter.'+level)
        logger.setLevel(loglevel)

        ch = logging.StreamHandler()
        ch.setLevel(loglevel)
        formatter = logging.Formatter('%(levelname)s:%(filename)s:%(lineno)s:%(funcName)s:%(message)s')
        ch.setFormatter(formatter)
        logger.addHandler(ch)

        _loggers[level] = logger

    return _loggers[level]

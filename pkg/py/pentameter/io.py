import os
import json
import tempfile
from pkg_resources import resource_filename
from pentameter.log import get_logger

DEFAULT_CONFIG = dict(
    eps_norm=1e-12,
    eps_geo=1e-9,
    max_depth=7,
    seed=0,
    tiling_budget=6,
    horizon=20,
    width_px=800,
    height_px=800,
)

class ConfigError(ValueError):
    pass

def pentameter_data_dir():
    '''
    Returns pentameter data dir
    '''
    if "PENTAMETER_DATA" in os.environ :
        return os.environ["PENTAMETER_DATA"]
    else :
        return resource_filename('pentameter', 'data')

def machine_filename(name):
    return os.path.join(pentameter_data_dir(), 'machines', '{}.json'.format(name))

def demo_roster_filename():
    return os.path.join(pentameter_data_dir(), 'roster-demo.yaml')

def default_config_filename():
    return os.path.join(pentameter_data_dir(), 'default.cfg')


def read_config(filename=None):
    '''
    Returns DEFAULT_CONFIG updated with the key=value lines of filename.
    Values are converted to the type of the default.
    '''
    config = dict(DEFAULT_CONFIG)
    if filename is None :
        return config
    log = get_logger()
    log.debug("reading {}".format(filename))
    with open(filename) as ifile :
        for num, line in enumerate(ifile, 1) :
            line = line.split('#')[0].strip()
            if line == '' :
                continue
            if '=' not in line :
                raise ConfigError("{}:{}: expected key=value, got '{}'".format(filename, num, line))
            key, value = [s.strip() for s in line.split('=', 1)]
            if key not in DEFAULT_CONFIG :
                raise ConfigError("{}:{}: unknown key '{}'".format(filename, num, key))
            try :
                config[key] = type(DEFAULT_CONFIG[key])(value)
            except ValueError :
                raise ConfigError("{}:{}: bad value '{}' for {}".format(filename, num, value, key))
    return config


def write_json(filename, params):
    '''
    Writes params as JSON with sorted keys, through a temporary file
    renamed onto filename.
    '''
    dirname = os.path.dirname(os.path.abspath(filename))
    fd, tmpname = tempfile.mkstemp(dir=dirname, prefix='.tmp-', suffix='.json')
    try :
        with os.fdopen(fd, 'w') as ofile :
            json.dump(params, ofile, sort_keys=True, indent=1)
            ofile.write('\n')
        os.replace(tmpname, filename)
    except Exception :
        if os.path.isfile(tmpname) :
            os.unlink(tmpname)
        raise
    get_logger().debug("wrote {}".format(filename))

def read_json(filename):
    with open(filename) as ifile :
        return json.load(ifile)


def write_tiles(filename, tiles, depth=None):
    params = dict(name='Pentagrid tiles', version='1', depth=depth,
                  tiles=[tile.tojson() for tile in tiles])
    write_json(filename, params)

def read_tiles(filename):
    '''
    Returns the list of Tile of a file written by write_tiles, each pentagon
    rebuilt from its hat (A, E, D).
    '''
    from pentameter.hyperbolic import MPoint
    from pentameter.pentagrid import Tile, Pentagon, Quarter
    params = read_json(filename)
    if params.get('name') != 'Pentagrid tiles' :
        raise RuntimeError("don't know how to read {}".format(filename))
    tiles = []
    for row in params['tiles'] :
        v = row['vertices']
        frame = Quarter.hat_of(MPoint(v[0]), MPoint(v[4]), MPoint(v[3])).frame
        tiles.append(Tile(Pentagon(frame), row['path'], row['color'], row.get('generation', 0)))
    return tiles

# Basic setup.py to support testing and installation.
#
# Supports:
# - python setup.py install
# - python setup.py test
#
# Does not support:
# - python setup.py version  (edit py/pentameter/_version.py instead)

import os, glob, re
from setuptools import setup, find_packages

def _get_version():
    line = open('py/pentameter/_version.py').readline().strip()
    m = re.match(r"__version__\s*=\s*'(.*)'", line)
    if m is None:
        print('ERROR: Unable to parse version from: {}'.format(line))
        version = 'unknown'
    else:
        version = m.groups()[0]

    return version

#- Basic info
setup_keywords = dict(
    name='pentameter',
    version=_get_version(),
    description='Pentagrid of the hyperbolic plane: tilings, quarters and ends',
    author='pentameter developers',
    license='BSD',
)

setup_keywords['zip_safe'] = False

#- What to install
setup_keywords['packages'] = find_packages('py')
setup_keywords['package_dir'] = {'':'py'}

#- Treat everything in bin/ as a script to be installed
setup_keywords['scripts'] = glob.glob(os.path.join('bin', '*'))

#- Data to include
setup_keywords['package_data'] = {
    'pentameter': ['data/*', 'data/machines/*'],
}

#- Dependencies
setup_keywords['install_requires'] = [l.strip() for l in open('requirements.txt') if l.strip()]

#- Testing
setup_keywords['test_suite'] = 'pentameter.test.test_suite'

#- Go!
setup(**setup_keywords)

# -*- coding: utf-8 -*-
# Licensed under a 3-clause BSD style license - see LICENSE.rst
#
# Sphinx configuration of the pyadaco documentation.

import datetime
import os
import sys
from configparser import ConfigParser

sys.path.insert(0, os.path.abspath('..'))

conf = ConfigParser()
conf.read([os.path.join(os.path.dirname(__file__), '..', 'setup.cfg')])
setup_cfg = dict(conf.items('metadata'))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx',
              'sphinx.ext.mathjax', 'numpydoc',
              'sphinx_automodapi.automodapi']
numpydoc_show_class_members = False
automodapi_toctreedirnm = 'api'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'astropy': ('https://docs.astropy.org/en/stable/', None),
    'matplotlib': ('https://matplotlib.org/stable/', None)}

exclude_patterns = ['_build']
default_role = 'obj'

project = setup_cfg['name']
author = setup_cfg['author']
copyright = '{0}, {1}'.format(datetime.datetime.now().year, author)

version = release = setup_cfg['version']

html_title = '{0} v{1}'.format(project, release)
htmlhelp_basename = project + 'doc'
latex_documents = [('index', project + '.tex', project + u' Documentation',
                    author, 'manual')]
man_pages = [('index', project.lower(), project + u' Documentation',
              [author], 1)]

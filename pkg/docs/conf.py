# Configuration file for the Sphinx documentation builder.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

exec(open(os.path.join('..', 'reebcomp', '_version.py'), encoding='utf-8').read())

# -- Project information -----------------------------------------------------

project = 'reebcomp'
copyright = '2026, the reebcomp developers'
author = 'the reebcomp developers'

version = __version__
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
}

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = []
pygments_style = 'default'
highlight_language = 'python3'

# -- Options for HTML output -------------------------------------------------

import sphinx_rtd_theme
html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'reebcompdoc'

man_pages = [
    (master_doc, 'reebcomp', 'reebcomp Documentation',
     [author], 1)
]

# Configuration file for the Sphinx documentation builder.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

import pydata_sphinx_theme

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.coverage',
              'sphinx.ext.napoleon']

source_suffix = '.rst'
master_doc = 'index'

project = 'greedylab'
copyright = '2026, greedylab developers'
author = 'greedylab developers'
version = '0.1'
release = '0.1.0'

language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = False

html_theme = "pydata_sphinx_theme"
html_theme_options = {
    "collapse_navigation": True,
}
htmlhelp_basename = 'greedylabdoc'

latex_documents = [
    (master_doc, 'greedylab.tex', 'greedylab Documentation',
     author, 'manual'),
]
man_pages = [
    (master_doc, 'greedylab', 'greedylab Documentation',
     [author], 1)
]

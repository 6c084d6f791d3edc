# Sphinx configuration for the tccmap documentation.

project = 'tccmap'
copyright = '2020, tccmap contributors'
author = 'tccmap contributors'

extensions = [
    'recommonmark',
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
]

source_suffix = ['.rst', '.md']
master_doc = 'index'
exclude_patterns = ['_build']

html_theme = 'sphinx_rtd_theme'

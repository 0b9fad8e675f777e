# -*- coding: utf-8 -*-
#
# dppdisc documentation build configuration file.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import os
import sys
from unittest.mock import MagicMock


class Mock(MagicMock):
    @classmethod
    def __getattr__(cls, name):
            return MagicMock()


# System path insert

sys.path.insert(0, os.path.abspath('../..'))


# Need to mock all the requirements

MOCK_MODULES = ['numpy',
                'pandas',
                'scipy',
                'scipy.linalg',
                'scipy.integrate',
                'scipy.spatial',
                'scipy.special',
                'scipy.stats',
                'six']
sys.modules.update((mod_name, Mock()) for mod_name in MOCK_MODULES)


# -- General configuration ------------------------------------------------

needs_sphinx = '1.3'

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.napoleon',
              'sphinx.ext.githubpages']

# Napoleon settings
napoleon_google_docstring = False
napoleon_use_param = False
napoleon_use_ivar = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'dppdisc'
copyright = '2026, dppdisc developers'
author = 'dppdisc developers'

version = '0.2'
release = '0.2.0'

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = 'nature'
html_static_path = ['_static']
htmlhelp_basename = 'dppdiscdoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'dppdisc.tex', 'dppdisc Documentation',
     author, 'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'dppdisc', 'dppdisc Documentation',
     [author], 1)
]


# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (master_doc, 'dppdisc', 'dppdisc Documentation',
     author, 'dppdisc', 'Determinantal point processes and ball discrepancy.',
     'Miscellaneous'),
]

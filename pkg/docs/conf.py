# -*- coding: utf-8 -*-
#
# mimeticpy documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

# Make the package importable without installing it.
sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinxnotes.strike",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "mimeticpy"
copyright = "2024, mimeticpy Contributors"

# Filled in from setuptools_scm at release time.
version = ""
release = ""

exclude_patterns = ["_build"]
pygments_style = "default"

intersphinx_mapping = {"numpy": ("https://numpy.org/doc/stable/", None)}

# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
htmlhelp_basename = "MimeticPyDoc"

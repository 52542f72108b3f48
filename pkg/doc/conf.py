###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import pathlib
import sys

# add `manpages` directory to sys.path
sys.path.append(str(pathlib.Path(__file__).absolute().parent))

import docutils.nodes  # noqa: E402
from manpages import man_pages  # noqa: E402

# -- Project information -----------------------------------------------------

project = "quadprice"
copyright = """Copyright 2026 The quadprice developers.

SPDX-License-Identifier: LGPL-3.0"""

# -- General configuration ---------------------------------------------------

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

master_doc = "index"
source_suffix = ".rst"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
]

# Turning "--" into an en-dash makes no sense for long options in man pages
smartquotes = False

# -- Setup for Sphinx API Docs -----------------------------------------------

script_dir = os.path.normpath(os.path.dirname(__file__))
py_package_dir = os.path.normpath(os.path.join(script_dir, "../src/python/"))

# Make sure that the package is in PYTHONPATH for autodoc
sys.path.insert(0, py_package_dir)


def run_apidoc(_):
    # pylint: disable=import-outside-toplevel
    from sphinx.ext.apidoc import main

    build_dir = os.environ.get("SPHINX_BUILDDIR", script_dir)
    output_path = os.path.join(build_dir, "python", "autogenerated")
    exclusions = [os.path.join(py_package_dir, "setup.py")]
    main(["-e", "-f", "-M", "-T", "-o", output_path, py_package_dir] + exclusions)


def man_role(name, rawtext, text, lineno, inliner, options=None, content=None):
    section = int(name[-1])
    page = None
    for man in man_pages:
        if man[1] == text and man[4] == section:
            page = man[0]
            break
    if page is None:
        page = "man1/quadprice"
        section = 1

    node = docutils.nodes.reference(
        rawsource=rawtext,
        text=f"{text}({section})",
        refuri=f"../{page}.html",
        **(options or {}),
    )
    return [node], []


def setup(app):
    app.connect("builder-inited", run_apidoc)
    for section in [1, 5]:
        app.add_role(f"man{section}", man_role)


napoleon_google_docstring = True

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"

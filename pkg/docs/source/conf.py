# Sphinx configuration of the dickephase documentation

import os
import sys

# the package is documented from the source tree, not from an installed copy
sys.path.insert(0, os.path.abspath("../.."))

from dickephase.__version__ import (  # noqa: E402
    dickephase_schema_version,
    dickephase_tool_name,
    dickephase_tool_version,
)

# -- Project information -----------------------------------------------------

project = dickephase_tool_name
copyright = "2026, The dickephase developers"
author = "The dickephase developers"
release = dickephase_tool_version
version = ".".join(release.split(".")[:2])

master_doc = "index"

# substitutions available in every page, e.g. |schema_version| in formats.rst
rst_epilog = f"""
.. |schema_version| replace:: {dickephase_schema_version}
"""

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx_click",
    "sphinx_rtd_theme",
]

autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "undoc-members": False}

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_title = f"dickephase {release}"

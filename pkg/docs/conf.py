#!/usr/bin/env python3
"""Sphinx configuration of the projcalc documentation."""

import datetime
import sys
from pathlib import Path

import projcalc
from projcalc.reports import SCHEMA

if sys.version_info < (3, 11):
    import tomli as tomllib
else:
    import tomllib

root = Path(__file__).parent.parent
pyproject = tomllib.loads((root / "pyproject.toml").read_text())
project_meta = pyproject["project"]

project = project_meta["name"]
author = project_meta["authors"][0]["name"]
copyright = f"{datetime.date.today().year}, {author}"

version = projcalc.__version__
release = version

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx_automodapi.automodapi",
    "sphinx_automodapi.smart_resolver",
    "sphinx_click",
    "numpydoc",
    "sphinx_design",
]

templates_path = ["_templates"]
exclude_patterns = ["_build", "changes", "*.log"]
master_doc = "index"
default_role = "py:obj"

rst_epilog = f"""
.. |python_requires| replace:: {project_meta['requires-python']}
.. |schema| replace:: ``{SCHEMA}``
"""

# API pages: one automodapi page per sub-package, no inherited Enum/str noise
automodapi_toctreedirnm = "api"
automodsumm_inherited_members = False
numpydoc_show_class_members = False
numpydoc_class_members_toctree = False
numpydoc_xref_param_type = True
numpydoc_xref_ignore = {"optional", "or", "of", "default"}
numpydoc_xref_aliases = {
    "RingElement": "projcalc.ring.RingElement",
    "StarRingContext": "projcalc.ring.StarRingContext",
    "ProjectionPair": "projcalc.pairs.ProjectionPair",
    "Subspace": "projcalc.subspaces.Subspace",
    "TheoremReport": "projcalc.reports.TheoremReport",
    "ToleranceConfig": "projcalc.numeric.ToleranceConfig",
    "SvdInfo": "projcalc.numeric.SvdInfo",
}

doctest_global_setup = """
import numpy as np
from projcalc.ring import StarRingContext
from projcalc.subspaces import column_space
"""

# a = pqp, b = pq(1-p), d = (1-p)q(1-p) in the user guide
mathjax3_config = {
    "tex": {
        "macros": {
            "pbar": r"\bar{p}",
            "qbar": r"\bar{q}",
            "mp": [r"{#1}^{\dagger}", 1],
        }
    }
}

html_theme = "pydata_sphinx_theme"
html_title = project
htmlhelp_basename = f"{project}docs"
html_theme_options = {
    "github_url": project_meta["urls"]["repository"],
    "navigation_with_keys": False,
    "announcement": (
        "projcalc is not stable yet; the report schema "
        f"{SCHEMA} may still change before the 1.0 release."
    ),
}

intersphinx_mapping = {
    "click": ("https://click.palletsprojects.com/en/stable", None),
    "hypothesis": ("https://hypothesis.readthedocs.io/en/latest", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "pandas": ("https://pandas.pydata.org/pandas-docs/stable", None),
    "python": ("https://docs.python.org/3", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "sympy": ("https://docs.sympy.org/latest", None),
}

nitpick_ignore = [
    ("py:class", "numpy.typing.ArrayLike"),
    ("py:class", "np.ndarray"),
]

suppress_warnings = ["intersphinx.external"]

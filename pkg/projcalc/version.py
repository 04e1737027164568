# Resolves the version written by setuptools_scm, with a fallback for
# source trees that were never installed.
try:
    try:
        from ._dev_version import version
    except ImportError:
        from ._version import version
except Exception:
    import warnings

    warnings.warn(
        "Could not determine the projcalc version; the package does not "
        "seem to be installed. Run 'pip install -e .' in the repository."
    )
    del warnings
    version = "0.0.0"

__version__ = version

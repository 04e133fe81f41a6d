"""Build script: compiles the optional SNF kernel when Cython is available.

The package is fully functional without the extension; ``sglink.smith``
falls back to the pure-Python path at import time.  Set SGLINK_PURE_BUILD=1
to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SGLINK_PURE_BUILD"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("sglink._snfcore", ["src/sglink/_snfcore.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

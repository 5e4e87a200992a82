"""Build script: compiles the closure kernel when Cython and a C compiler are available."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("UPD_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("causalupd._closure", ["src/causalupd/_closure.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

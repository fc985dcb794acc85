"""Build hook for the optional compiled kernel.

The package works without the extension (a pure-Python kernel is selected at
import time); set GRAPHISG_NO_EXT=1 to skip compiling it entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GRAPHISG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("graphisg._ckernel", ["src/graphisg/_ckernel.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

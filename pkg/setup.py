"""Build script: compiles the optional SNF kernel extension.

The extension is a pure speedup; when Cython or a C compiler is
missing, or the compile fails, installation proceeds and the package
falls back to the pure-Python kernel at import time.  Set
LERAY_PURE_BUILD=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from distutils.errors import (
        CCompilerError,
        DistutilsExecError,
        DistutilsPlatformError,
    )
except ImportError:  # setuptools >= 60 vendors distutils
    from setuptools.errors import (  # type: ignore[attr-defined]
        CCompilerError,
        DistutilsExecError,
        DistutilsPlatformError,
    )


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except (DistutilsPlatformError, FileNotFoundError):
            pass

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, DistutilsExecError, DistutilsPlatformError,
                ValueError):
            pass


ext_modules = []
if os.environ.get("LERAY_PURE_BUILD") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("leray._kernel._csnf",
                       ["src/leray/_kernel/_csnf.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

"""Build hook for the optional compiled core.

The package is pure Python by default; if Cython and a C compiler are
available, the hot kernels in src/semispec/_fastcore.pyx are compiled and
picked up at import time. A failed extension build must never fail the
install, so build_ext is wrapped to degrade to the pure backend.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(f"semispec: skipping compiled core ({exc}); pure backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"semispec: skipping {ext.name} ({exc}); pure backend will be used")


ext_modules = []
if os.environ.get("SEMISPEC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/semispec/_fastcore.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception as exc:
        print(f"semispec: Cython unavailable ({exc}); building pure")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COSTASLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "costaslab._corrcore",
                    ["src/costaslab/_corrcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        # No Cython: install pure-Python only, the package falls back at import.
        ext_modules = []

setup(ext_modules=ext_modules)

"""Build the optional Cython kernel; the package falls back to numpy if it is absent."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QUARTIC_PAIRS_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "quartic_pairs._kernels",
                    ["src/quartic_pairs/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++14"],
                )
            ],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)

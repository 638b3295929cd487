"""Build script for the optional compiled kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile only costs speed, not functionality.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    compiler_directives = {
        "language_level": "3",
        "boundscheck": False,
        "wraparound": False,
        "cdivision": True,
    }
    ext_modules = cythonize(
        [
            Extension(
                "fspec.numerics._kernels",
                ["src/fspec/numerics/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives=compiler_directives,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    print(f"fspec: skipping compiled kernels ({exc}); pure-NumPy fallback will be used",
          file=sys.stderr)

setup(ext_modules=ext_modules)

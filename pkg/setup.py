"""Build script: compiles the optional Cython core.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed extension build degrades rather than aborts.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "randmap._core",
                ["src/randmap/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"randmap: skipping compiled core ({exc}); pure-Python kernels will be used")

setup(ext_modules=ext_modules)

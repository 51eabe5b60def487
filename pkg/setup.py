import os

import numpy
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CAVMPC_PURE_PYTHON"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cavmpc._lp_cy",
                ["src/cavmpc/_lp_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)

"""Build script: compiles the optional kernel extension, falling back to pure Python."""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(["src/krcascade/_kernels/_fast.pyx"], language_level=3)


class OptionalBuildExt(build_ext):
    """Never fail the install over the accelerator; the pure backend always works."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn("compiled kernels skipped: %s" % (exc,))

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn("compiled kernels skipped for %s: %s" % (ext.name, exc))


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

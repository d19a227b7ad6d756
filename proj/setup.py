"""Builds the _slopelab extension by driving the CMake project.

The wheel/editable install places the extension inside the slopelab package;
everything else (metadata, package discovery) lives in pyproject.toml.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        ext_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).resolve().parent

        configure = [
            "cmake",
            str(source_dir),
            "-DSLOPELAB_PYTHON=ON",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={ext_dir}{os.sep}",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(configure, cwd=build_dir, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_slopelab"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("slopelab._slopelab")],
    cmdclass={"build_ext": CMakeBuild},
)

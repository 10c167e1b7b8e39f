#!/usr/bin/env python

import os
import re

from setuptools import setup, find_packages

with open("requirements.txt", "r") as reqs_file:
    requirements = reqs_file.read().splitlines()

with open("README.md", "r") as fh:
    long_description = fh.read()

with open(os.path.join("adhmkit", "__init__.py"), "r") as init_file:
    VERSION = re.search(r"__version__ = '([^']+)'", init_file.read()).group(1)

setup(name='adhm-toolkit',
      version=VERSION,
      description='Numerical checks for ADHM moment maps, their strata, F2 mapping cones, invariant series and '
                  'perturbed vortices on a torus.',
      long_description=long_description,
      long_description_content_type="text/markdown",
      license='Apache License',
      package_dir={'adhmkit': 'adhmkit'},
      packages=find_packages(exclude=('tests', 'tests.*')),
      package_data={'adhmkit': ['thresholds.yml']},
      python_requires='>=3.9',
      classifiers=[
          "Development Status :: 4 - Beta",
          "Intended Audience :: Science/Research",
          "Programming Language :: Python :: 3.9",
          "Programming Language :: Python :: 3.10",
          "Programming Language :: Python :: 3.11",
          "License :: OSI Approved :: Apache Software License",
          "Topic :: Scientific/Engineering :: Mathematics",
          "Operating System :: POSIX :: Linux"
      ],
      entry_points={
          'console_scripts': ['adhm = adhmkit.cli:main']
      },
      install_requires=requirements
)

# -*- coding: utf-8 -*-
#
# Copyright 2024 The mimeticpy Authors
#
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not
# use this file except in compliance with the License. You may obtain a copy of
# the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations under
# the License.
#

import os

from setuptools import find_packages, setup

here = os.path.abspath(os.path.dirname(__file__))

description = "Conservative leapfrog and mimetic staggered-grid schemes for waves and Maxwell's equations."

try:
    with open(os.path.join(here, "README.rst"), encoding="utf-8") as f:
        long_description = "\n" + f.read()
except FileNotFoundError:
    long_description = description

setup(
    name="mimeticpy",
    description=description,
    long_description=long_description,
    long_description_content_type="text/x-rst",
    author="The mimeticpy Authors",
    python_requires=">=3.8.0",
    packages=find_packages(exclude=["*tests*"]),
    install_requires=["numpy>=1.20"],
    entry_points={"console_scripts": ["mimeticpy = mimeticpy.cli:main"]},
    license="Apache 2.0",
    classifiers=[
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)

#!/usr/bin/env python

#----------------------------------------------------------------------------------------------------------------------------------

# 2+3 compatibility
from __future__ import unicode_literals

# standards
from os import path
import re
import setuptools

#----------------------------------------------------------------------------------------------------------------------------------

with open(path.join(path.dirname(__file__), 'README.md'), 'rb') as file_in:
    long_description = file_in.read().decode('UTF-8')

with open(path.join(path.dirname(__file__), 'stmbp', 'version.py'), 'rb') as file_in:
    stmbp_version = re.search(
        r'STMBP_VERSION = \'(.+)\'',
        file_in.read().decode('UTF-8'),
    ).group(1)

setuptools.setup(
    name='stmbp',
    version=stmbp_version,
    description='Blood pressure estimation from facial video spatial-temporal maps',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=('tests', 'tests.*')),
    python_requires='>=3.8',
    entry_points={
        'console_scripts': [
            'stmbp = stmbp.cli:main',
        ],
    },
    install_requires=[
        'numpy>=1.20,<3',
        'torch>=2.0,<3',
        'opencv-python-headless>=4.5,<5',
        'matplotlib>=3.3,<4',
        'scikit-learn>=1.0,<2',
    ],
    extras_require={
        'tests': [
            'hypothesis>=6,<7',
        ],
    },
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Medical Science Apps.',
        'Topic :: Scientific/Engineering :: Image Recognition',
    ],
)

#----------------------------------------------------------------------------------------------------------------------------------

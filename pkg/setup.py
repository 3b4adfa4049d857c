#!/usr/bin/env python
# -*- coding: utf-8 -*-
from os.path import exists
from setuptools import setup, find_packages

description = 'Double-star graphs and imprimitive quotients of finite symmetric graphs'
name = 'doublestar'
year = '2026'
version = '0.1.0'

setup(
    name=name,
    version=version,
    packages=find_packages(exclude=['tests']),
    package_dir={name: name},
    include_package_data=True,
    license='MIT',
    description=description,
    long_description=open('README.md').read() if exists('README.md') else '',
    long_description_content_type="text/markdown",
    install_requires=['numpy', 'sympy', 'networkx>=3.2', 'pydot'
                      ],
    entry_points={'console_scripts': ['doublestar=doublestar.cli:main']},
    python_requires=">=3.8",
    classifiers=['Operating System :: OS Independent',
                 'Programming Language :: Python :: 3',
                 ],
    platforms=['ALL'],
)

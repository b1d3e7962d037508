#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from setuptools import setup, find_packages

setup(
    name='diagasym',
    version='1.0',
    description='Exact series, smooth point asymptotics, recurrence guessing and differential approximants for the counts of simple singular vector tuples of cubical tensors',
    packages=find_packages(exclude=['tests']),
    entry_points={'console_scripts': ['diagasym = diagasym:main']},
    test_suite="tests",
    python_requires='>=3.9',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    install_requires=[
        'psutil',
        'pyparsing==2.4.7',
        'sympy>=1.9',
        'mpmath',
        'numpy'
    ],
)

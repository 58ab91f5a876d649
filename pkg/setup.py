#!/usr/bin/env python

from setuptools import setup
from qdiv import __version__

with open('README.md') as f:
    long_description = f.read()
desc = """Quadratic division algebras (qdiv): exact octonions, dissident maps
and the degree of eight-dimensional real quadratic division algebras"""

setup(
    name='qdiv',
    version=__version__,
    description=desc,
    packages=['qdiv'],
    license='MIT',
    long_description=long_description,
    long_description_content_type="text/markdown",
    provides=[
        'qdiv'
    ],
    install_requires=[
        'sympy>=1.13'
    ],
    extras_require={
        'flint': ['python-flint>=0.6.0']
    },
    tests_require=[
        'flake8>=3.4',
        'pytest>=3.6',
        'pytest-cov',
        'pytest-flake8',
        'hypothesis>=6.0'
    ],
    entry_points="""
        [console_scripts]
        qdiv = qdiv.__main__:main
    """,
    zip_safe=False,
    keywords='octonions division algebras dissident maps exact arithmetic',
    classifiers=[
        'Development Status :: 4 - Beta',

        'Environment :: Console',

        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',

        'License :: OSI Approved :: MIT License',

        'Intended Audience :: Science/Research',

        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Utilities',
    ]
)

# Publish to pypi:
#   rm -rf dist; python setup.py sdist bdist_wheel; twine upload dist/*

import sys
import setuptools

if sys.version_info < (3, 9):
    print("greedylab requires Python 3.9 or higher please upgrade")
    sys.exit(1)

version = {}
with open('greedylab/_version.py') as f:
    exec(f.read(), version)

long_description = \
"""greedylab computes greedy-type parameters of bases in finite-dimensional
quasi-Banach spaces: democracy and unconditionality constants, the
threshold functions of the thresholding greedy algorithm, and Lebesgue
constants. Every number it reports is labelled as exact, a lower bound or
an upper bound, and comes with a witness that reproduces it.

A verification harness checks the inequalities between these quantities on
a catalog of example bases, and a command line tool writes the results as
CSV and JSON files.

greedylab is open source and freely available under the `New BSD License
<https://opensource.org/licenses/BSD-3-Clause>`__ terms.
"""

setuptools.setup(
    name='greedylab',
    version=version['__version__'],
    packages=['greedylab', 'greedylab.tests'],
    license='BSD-3',
    description='Greedy-type parameters of bases in finite-dimensional '
                'quasi-Banach spaces.',
    long_description=long_description,
    long_description_content_type="text/x-rst",
    python_requires='>=3.9',
    install_requires=['numpy', 'packaging', 'scipy'],
    entry_points={
        'console_scripts': ['greedylab=greedylab.cli:main'],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)

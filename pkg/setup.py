from setuptools import setup, find_packages

with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name='pylie',
    version='0.1.0',
    description='Exact Lie algebra computations over the rationals: nilpotent centralizers, indices and Property (P)',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author='pylie developers',
    license='MIT',
    python_requires='>=3.9',
    packages=find_packages(exclude=["tests"]),
    include_package_data=True,
    package_data={"pylie": ["data/*.cat"]},
    install_requires=[
        "sympy>=1.12",
        "pandas>=2.2.3,<3.0.0",
        "numpy>=1.24",
    ],
    extras_require={
        "fast": ["gmpy2>=2.1"],
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": ["pylie=pylie.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)

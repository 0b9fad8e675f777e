from setuptools import setup


exec (open('dppdisc/version.py').read())  # noqa

setup(
    name='dppdisc',
    version=__version__,  # noqa
    description="Determinantal point processes, ball discrepancy and number "
                "variance on compact two-point homogeneous spaces.",
    long_description=open('README.md').read(),
    license='MIT',
    keywords=['determinantal-point-processes', 'discrepancy', 'numpy',
              'scipy', 'pandas', 'spherical-harmonics'],
    packages=['dppdisc', 'dppdisc.catalog'],
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
        'pandas',
        'six'
    ],
    extras_require={
        'test': ['pytest']
    },
    entry_points={
        'console_scripts': ['dppdisc = dppdisc.cli:main']
    }
)

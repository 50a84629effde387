from setuptools import find_packages, setup

setup(
    name = 'ResamplePilot',
    version= '0.1.0',
    author= 'Patel Shehbaz, Sean Spencer',
    author_email= 'patelshehbaz27@gmail.com, sgspencer2618@gmail.com',
    package_dir= {'': 'src'},
    packages= find_packages('src'),
    py_modules= ['main'],
    python_requires= '>=3.8',
    install_requires = [
        'numpy>=1.21.0,<2.0.0',
        'scipy>=1.9.0',
        'pandas>=1.5.0',
        'joblib>=1.2.0',
        'python-dotenv>=0.19.0',
        'json5>=0.9.0',
        'loguru>=0.6.0',
        'tabulate==0.9.0',
    ],
    entry_points= {'console_scripts': ['resamplepilot=main:main']},
)

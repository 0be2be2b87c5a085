from setuptools import setup, find_packages

setup(
name='SuperFit',

version='0.1.0',

description='Annihilators, Fitting ideals and resolutions of generic '
'Z/2-graded matrices over super-commutative rings.',

long_description='Exact computations with the cokernel of the generic map over a '
'super-commutative polynomial ring: annihilator ideals, the Fitting ideals attached to '
'Young diagrams, Lie superalgebra actions and truncated minimal free resolutions.',

author='SuperFit developers',

install_requires=[
    'sympy>=1.12',
    'pytest'
],

extras_require={
    'pilotjob': [
        'qcgPilotManager @ git+https://github.com/vecma-project/QCG-PilotJob.git@v0.7.0#egg=qcgPilotManager'
    ]
},

packages=find_packages(exclude=['tests', 'tests.*']),

scripts=[
    'scripts/superfit',
    'scripts/superfit_task'
],

include_package_data=True
)

"""
glreduced: reduced Ginzburg-Landau energies in the large-kappa regime.

Dirichlet ground states m0 and M0, the L4 quotient, the thermodynamic limit
g(b), magnetic Landau spectra and the lowest Landau level, the Abrikosov
energy, magnetic-periodic bulk samples and a verification harness for the
inequalities that tie them together.
"""

__version__ = "0.1.0"

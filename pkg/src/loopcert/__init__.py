"""loopcert: exact affine root-system / Weyl-group engine with numeric
convergence certificates and a one-variable decay-estimate suite."""

__version__ = "0.1.0"

"""schifferlab: radial Helmholtz eigenvalue scans anchored at a starlike
boundary, zero-density and indicator diagnostics for the resulting entire
dispersion functions, and an overdetermined boundary least-squares test that
separates balls from other starlike domains."""

__version__ = "0.1.0"

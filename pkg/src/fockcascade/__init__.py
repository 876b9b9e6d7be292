"""Wave-packet dynamics in the Fock space of chaotic many-body systems:
TBRI / WBRM ensembles, exact propagation, and cascade-model predictions."""

__version__ = "0.1.0"

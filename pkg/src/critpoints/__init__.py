"""Critical-point ideals over prime fields: construction, Groebner bases, FGLM and Hilbert series."""

__version__ = "0.1.0"

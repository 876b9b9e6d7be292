"""Figure rendering frontend for fockcascade result tables.

Consumes only the delimited tables the simulation CLI emits; never
imports the simulation package.
"""

__version__ = "0.1.0"

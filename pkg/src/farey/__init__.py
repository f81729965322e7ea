"""farey - the modular group, its subgroups, and indefinite binary quadratic forms."""

__version__ = "0.1.0"

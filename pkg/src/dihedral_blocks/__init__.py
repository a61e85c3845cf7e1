"""Principal 2-blocks with dihedral defect groups: groups, GF(2) modules, characters and a verification CLI."""

__version__ = "0.1.0"

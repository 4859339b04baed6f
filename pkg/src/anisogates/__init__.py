"""Universal gate compilation and verification for Zeeman + anisotropic exchange control."""
__version__ = '0.1.0'

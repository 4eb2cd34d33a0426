"""Search for perfect 2-error-correcting codes over non-prime-power alphabets."""

__version__ = "0.1.0"

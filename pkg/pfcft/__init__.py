"""Prime-factor cyclotomic Fourier transforms over GF(2^l)."""

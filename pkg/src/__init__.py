"""LapMotif: normalized Laplacian spectra and eigenvalue-1 constructions"""

"""
Version information for LapMotif
Uses semantic versioning: MAJOR.MINOR.PATCH
"""
__version__ = "1.0.0"
__version_info__ = tuple(map(int, __version__.split('.')))

# Version metadata for the packaged executable
VERSION_MAJOR = __version_info__[0]
VERSION_MINOR = __version_info__[1]
VERSION_PATCH = __version_info__[2]
VERSION_STRING = __version__

# Additional metadata
APP_NAME = "LapMotif"
APP_DESCRIPTION = "Normalized graph Laplacian spectra and eigenvalue-1 constructions"
COMPANY_NAME = "LapMotif"
SETTINGS_APP_NAME = "lapmotif"
EXECUTABLE_NAME = "lapmotif"

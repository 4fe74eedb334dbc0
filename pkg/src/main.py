"""
LapMotif
Main entry point for the command-line tool and the viewer
"""
import sys

from cli import run


def main():
    """Application entry point"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

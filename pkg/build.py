"""
Build script for a portable lapmotif executable
Runs PyInstaller on src/main.py with the Windows version resource
"""
import importlib.util
import os
import subprocess
import sys


def load_version(src_path: str):
    version_file = os.path.join(src_path, '__version__.py')
    if not os.path.exists(version_file):
        print(f"ERROR: Version file not found at: {version_file}")
        sys.exit(1)
    spec = importlib.util.spec_from_file_location("__version__", version_file)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def pyinstaller_command(project_root: str, version) -> list:
    """PyInstaller arguments for a one-file console build"""
    src_path = os.path.join(project_root, 'src')
    command = [
        sys.executable, '-m', 'PyInstaller',
        os.path.join(src_path, 'main.py'),
        '--name', f"{version.EXECUTABLE_NAME}-{version.VERSION_STRING}",
        '--onefile',
        '--console',
        '--paths', src_path,
        '--clean',
        '--noconfirm',
    ]
    version_info_path = os.path.join(project_root, 'version_info.txt')
    if os.path.exists(version_info_path):
        command += ['--version-file', version_info_path]
    return command


def build_exe():
    project_root = os.path.dirname(os.path.abspath(__file__))
    version = load_version(os.path.join(project_root, 'src'))

    print("=" * 60)
    print(f"Building {version.APP_NAME}")
    print(f"Version: {version.VERSION_STRING}")
    print("=" * 60)

    try:
        import PyInstaller  # noqa: F401
    except ImportError:
        print("ERROR: PyInstaller is not installed.")
        print("Please install it by running: pip install pyinstaller")
        sys.exit(1)

    try:
        subprocess.run(pyinstaller_command(project_root, version), check=True, cwd=project_root)
    except subprocess.CalledProcessError as e:
        print(f"\nERROR: Build failed with exit code {e.returncode}")
        sys.exit(1)
    print("\n" + "=" * 60)
    print("Build completed successfully!")
    print(f"Executable location: dist/{version.EXECUTABLE_NAME}-{version.VERSION_STRING}")
    print("=" * 60)


if __name__ == "__main__":
    build_exe()

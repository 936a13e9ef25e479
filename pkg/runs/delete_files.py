from pathlib import Path

from settings import Settings
SETTINGS = Settings.get_settings()


def get_paths() -> tuple[Path, Path, Path]:
    """Gets the paths to the three kinds of run artefacts.

    Returns:
    - tuple: Logs, parameters and results directory
    """
    return (SETTINGS.LOGS_DIR, SETTINGS.PARAMETERS_DIR, SETTINGS.RESULTS_DIR)


def remove_all_but_last_run(path: Path):
    """Removes the files of every run but the latest one in a directory.
    Files of one run share their timestamp prefix, so a run that saved a
    document and its witnesses keeps all of them.

    Args:
    - path (Path): One of the run directories
    """
    if not path.is_dir():
        return
    files = sorted(f for f in path.iterdir() if f.is_file())
    if len(files) <= 1:
        return

    latest = '_'.join(files[-1].name.split('_')[:2])
    for file_to_remove in files:
        if not file_to_remove.name.startswith(latest):
            file_to_remove.unlink()


if __name__ == "__main__":
    for path in get_paths():
        remove_all_but_last_run(path)

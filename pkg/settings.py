from pathlib import Path
from dataclasses import dataclass, asdict, field

# These are just the proposed standard values for the model search. Feel free
# to play around with any of them, the CLI flags override them per run.
BOUNDS_SETTINGS = {
    'max_roots': 1,         # Extra (unnamed) root components
    'max_nonroots': 1,      # Extra non-root components, multiplicity included
    'max_prefix': 2,        # Length of the non-periodic part of a signature
    'max_period': 2,        # Length of the periodic part of a signature
    'max_multiplicity': 1,  # Copies of one and the same non-root component
    'granularity': 2,       # Depth at which coloring cells stop splitting
    'budget_seconds': 60.0,
}

# Output related defaults for the command line driver
OUTPUT_SETTINGS = {
    'formats': ['text', 'json'],
    'format': 'text',
    'cet_depth': 0,    # 0 means: do not print the CET instantiation
    'plot_depth': 4,   # Address length up to which models are plotted
}


@dataclass
class Parameters:
    OUTPUT_FORMAT: str = OUTPUT_SETTINGS['format']
    CET_DEPTH: int = OUTPUT_SETTINGS['cet_depth']
    PLOT_DEPTH: int = OUTPUT_SETTINGS['plot_depth']
    LOG_TO_FILE: bool = True


@dataclass
class BaseSettings:
    # Logger setup
    LOGGER_NAME: str = 'monadic_completion'
    LOG_FORMAT: str = '%(asctime)s - %(levelname)s - %(message)s'
    LOG_DATE_FORMAT: str = '%H:%M:%S'

    # Timestamp format used for run artefacts
    TIMESTAMP_FORMAT: str = '%Y%m%d_%H%M%S'

    # Base dirs
    ROOT_DIR: Path = Path(__file__).resolve().parent

    SAMPLES_DIR: Path = ROOT_DIR / 'samples'
    GOLDEN_DIR: Path = SAMPLES_DIR / 'golden'

    RUNS_DIR: Path = ROOT_DIR / 'runs'
    VISUALIZATION_DIR: Path = ROOT_DIR / 'visualization'

    LOGS_DIR: Path = RUNS_DIR / 'logs'
    RESULTS_DIR: Path = RUNS_DIR / 'results'
    PARAMETERS_DIR: Path = RUNS_DIR / 'parameters'

    # Default file name for plotted models
    MODEL_PLOT_FILE: str = 'model_plotted.png'

    # Finite part of a presented model the search evaluates colorings on
    # before compiling automata
    SAMPLE_LENGTH: int = 4
    SAMPLE_SIZE: int = 24


@dataclass
class Settings(BaseSettings):
    BOUNDS: dict = field(default_factory=dict)
    OUTPUT_FORMATS: list = field(default_factory=list)

    @classmethod
    def get_settings(cls):
        base_settings = BaseSettings()
        settings_dict = asdict(base_settings)

        assert OUTPUT_SETTINGS['format'] in OUTPUT_SETTINGS['formats'], \
            "Invalid output format"

        return cls(
            BOUNDS=dict(BOUNDS_SETTINGS),
            OUTPUT_FORMATS=list(OUTPUT_SETTINGS['formats']),
            **settings_dict
        )

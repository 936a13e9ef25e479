from pathlib import Path

import pandas as pd

from engine.automata import RegularSet, format_address
from engine.models import ModelPresentation, embed, induced_fn, load_model
from logic.errors import ValidationError

from settings import Settings
SETTINGS = Settings.get_settings()


def read_model(path: Path | None = None) -> ModelPresentation:
    """Reads a model file. Without a path the latest witness saved under
    runs/results is used.

    Returns:
    - ModelPresentation: The model in the file
    """
    if path is None:
        witness_paths = sorted(SETTINGS.RESULTS_DIR.glob('*_model.json'))
        assert witness_paths, f"No saved models in {SETTINGS.RESULTS_DIR}"
        path = witness_paths[-1]
    return load_model(Path(path).read_text())


def _level(address: tuple[int, ...]) -> int:
    """Height inside the component: up for f_i, down for its inverse."""
    body = address[_component_of(address):]
    return sum(1 if letter > 0 else -1 for letter in body)


def _component_of(address: tuple[int, ...]) -> int:
    """Number of leading zeros, i.e. the component the address lives in."""
    j = 0
    while j < len(address) and address[j] == 0:
        j += 1
    return j


def domain_frame(model: ModelPresentation, depth: int) -> pd.DataFrame:
    """Members of D up to an address length, one row each.

    Returns:
    - pd.DataFrame: Columns Address, Label, Component, Level, Predicates,
        X and Y (plot coordinates). Example row:
        ((0, 1), '0 1', 1, 1, 'p', 0.0, 1)
    """
    domain = embed(model)
    predicates = [
        (name, model.coloring(l))
        for l, name in enumerate(model.sig.predicates, start=1)
    ]
    rows = []
    for address in domain.sample(depth):
        rows.append({
            'Address': address,
            'Label': format_address(address),
            'Component': _component_of(address),
            'Level': _level(address),
            'Predicates': ','.join(
                name for name, coloring in predicates if coloring.accepts(address)
            ),
        })
    frame = pd.DataFrame(
        rows,
        columns=['Address', 'Label', 'Component', 'Level', 'Predicates'],
    )

    # Spread every level of a component horizontally, components side by side
    frame['Rank'] = frame.groupby(['Component', 'Level']).cumcount()
    widths = frame.groupby('Component')['Rank'].max().add(2)
    offsets = widths.cumsum().shift(fill_value=0)
    frame['X'] = frame['Component'].map(offsets) + frame['Rank']
    frame['Y'] = frame['Level']
    return frame.drop(columns='Rank')


def edges_frame(domain: RegularSet, frame: pd.DataFrame) -> pd.DataFrame:
    """Induced function edges between the addresses of a domain frame.

    Returns:
    - pd.DataFrame: Columns From, To (row labels of frame) and Function
        (1-based index)
    """
    index = {address: i for i, address in zip(frame.index, frame['Address'])}
    edges = []
    for i, address in zip(frame.index, frame['Address']):
        for g in range(1, domain.n + 1):
            try:
                image = induced_fn(domain, g, address)
            except ValidationError:
                continue
            if image in index:
                edges.append({'From': i, 'To': index[image], 'Function': g})
    return pd.DataFrame(edges, columns=['From', 'To', 'Function'])

"""Plain-text tables for the human-readable reports."""
from typing import Dict, Mapping, Optional, Sequence

import pandas as pd


def rank_table(
    ranks: Mapping[int, int], names: Optional[Mapping[int, Sequence[str]]] = None
) -> str:
    """
    Render module ranks per homological degree.

    Parameters
    ----------
    ranks : Mapping[int, int]
        Rank of the free module in each degree.
    names : Mapping[int, Sequence[str]], optional
        Generator names per degree, shown when given.

    Returns
    -------
    str
        The rendered table.
    """
    frame = pd.DataFrame({"degree": list(ranks), "rank": list(ranks.values())})
    if names is not None:
        frame["generators"] = [" ".join(names.get(d, ())) for d in ranks]
    return frame.to_string(index=False)


def betti_table(betti: Mapping[int, int], generators: Mapping[int, int]) -> str:
    """Render b_i next to the number of generators of the KT resolution."""
    degrees = sorted(betti)
    frame = pd.DataFrame(
        {
            "degree": degrees,
            "b": [betti[d] for d in degrees],
            "generators": [generators.get(d, 0) for d in degrees],
        }
    )
    return frame.to_string(index=False)


def status_table(rows: Sequence[Dict[str, object]]) -> str:
    """Render a list of check results (one dict per row)."""
    if not rows:
        return "(no checks)"
    return pd.DataFrame(list(rows)).to_string(index=False)


def timing_table(timings: Mapping[str, float]) -> str:
    """Render recorded execution times, slowest first."""
    if not timings:
        return "(no timings recorded)"
    frame = pd.DataFrame(
        {"function": list(timings), "seconds": [round(t, 4) for t in timings.values()]}
    ).sort_values("seconds", ascending=False)
    return frame.to_string(index=False)

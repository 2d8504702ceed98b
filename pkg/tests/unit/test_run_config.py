import pytest
from pydantic import ValidationError

from ktres.config import DEFAULT_FIELD, DEFAULT_MAX_DEGREE, DEFAULT_SEED
from ktres.models.run_config import RunConfig


def test_run_config_defaults():
    """
    Test validation and default values for RunConfig.

    Parameters
    ----------
    None

    Returns
    -------
    None
    """
    config = RunConfig(command="kt", resolution="fixture:x2_xy_y2")
    assert config.field == DEFAULT_FIELD
    assert config.max_degree == DEFAULT_MAX_DEGREE
    assert config.seed == DEFAULT_SEED
    assert config.backend == "generic-lift"
    assert config.format == "text"
    assert config.psi is None

    # Extra fields (argparse leftovers) should be ignored
    config = RunConfig(
        command="verify", resolution="fixture:x2_xy_y2", handler=print, verbose=True
    )
    assert not hasattr(config, "handler")


def test_run_config_needs_an_input():
    with pytest.raises(ValidationError):
        RunConfig(command="resolve")
    with pytest.raises(ValidationError):
        RunConfig(command="resolve", ideal=["x^2"])
    config = RunConfig(command="resolve", ideal=["x^2", "y^2"], variables=["x", "y"])
    assert config.kind == "generic"


@pytest.mark.parametrize(
    "fields",
    [
        {"backend": "dga"},
        {"kt": "koszul", "kind": "taylor"},
        {"max_degree": 0},
        {"witness": -1},
        {"format": "yaml"},
        {"cinfty_n_max": 1},
    ],
)
def test_run_config_rejects(fields):
    with pytest.raises(ValidationError):
        RunConfig(command="betti", ideal=["x^2"], variables=["x"], **fields)


def test_run_config_backend_with_file():
    # a resolution file may carry its own product
    config = RunConfig(command="kt", resolution="r.json", backend="dga")
    assert config.backend == "dga"
    config = RunConfig(
        command="betti", ideal=["x^2"], variables=["x"], kind="koszul", kt="koszul"
    )
    assert config.kt == "koszul"

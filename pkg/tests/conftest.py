import numpy as np
import pytest

from qft1d import FieldKind, UnitSystem, make_basis, make_grid
from qft1d.scenarios import PRESETS, preset_config, run_scenario


@pytest.fixture(scope="session")
def compton_units():
    return UnitSystem.compton()


@pytest.fixture(scope="session")
def small_grid(compton_units):
    return make_grid(256, 16.0, compton_units)


@pytest.fixture(scope="session")
def small_bases(small_grid, compton_units):
    return {kind: make_basis(kind, small_grid, compton_units) for kind in FieldKind}


def random_spectrum_arrays(rng, n, kind, normalization="sigma"):
    """Random amplitudes normalized either in the sigma or the number sense."""
    g_plus = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    g_minus = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if normalization == "sigma" and kind.epsilon > 0:
        # keep the indefinite norm positive before scaling
        g_minus *= 0.5 * np.linalg.norm(g_plus) / np.linalg.norm(g_minus)
    if normalization == "sigma":
        norm = (np.sum(np.abs(g_plus) ** 2)
                - kind.epsilon * np.sum(np.abs(g_minus) ** 2))
    else:
        norm = np.sum(np.abs(g_plus) ** 2) + np.sum(np.abs(g_minus) ** 2)
    g_plus /= np.sqrt(norm)
    g_minus /= np.sqrt(norm)
    return g_plus, g_minus


@pytest.fixture(scope="session")
def preset_runs(tmp_path_factory):
    """Completed runs of every bundled preset, plus the subcritical control.

    Shared across the acceptance and figure tests; the heavy step-potential
    runs execute once per session.
    """
    root = tmp_path_factory.mktemp("runs")
    runs = {}
    for name in sorted(PRESETS):
        out = root / name
        runs[name] = {"manifest": run_scenario(preset_config(name), out_dir=out),
                      "dir": out}
    sub = preset_config("paper-fig3")
    sub.potential = dict(sub.potential, v0=0.5)
    sub.name = "paper-fig3-subcritical"
    out = root / "fig3-subcritical"
    runs["fig3-subcritical"] = {"manifest": run_scenario(sub, out_dir=out),
                                "dir": out}
    return runs


def read_density_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return data[:, 0], data[:, 1]

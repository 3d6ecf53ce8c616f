import json
from pathlib import Path

import pytest

from morin import curves
from morin import delpezzo as dp
from morin import vthreefold as vt

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "src" / "morin" / "schemas"
SMALL_PRIMES = (31, 37, 41)


def validate(schema_name: str, obj) -> None:
    import jsonschema
    from referencing import Registry, Resource

    resources = []
    for path in SCHEMA_DIR.glob("*.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    registry = Registry().with_resources(resources)
    schema = json.loads((SCHEMA_DIR / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(obj)


@pytest.fixture(scope="session")
def y_std():
    return dp.build_del_pezzo()


@pytest.fixture(scope="session")
def c_ell(y_std):
    return curves.curve_of_lines(y_std)


@pytest.fixture(scope="session")
def conf_ell(c_ell):
    return curves.build_configuration(c_ell)


@pytest.fixture(scope="session")
def ver_ell(conf_ell):
    return curves.verify_morin(conf_ell)


@pytest.fixture(scope="session")
def ten_nodal():
    from morin.reconstruct import ten_nodal_sextic

    return ten_nodal_sextic(seed=0)


@pytest.fixture(scope="session")
def conf_ten(y_std, ten_nodal):
    c = curves.nodal_curve_from_sextic(y_std, ten_nodal.gamma, plane_nodes=ten_nodal.nodes)
    return curves.build_configuration(c)


@pytest.fixture(scope="session")
def ver_ten(conf_ten):
    return curves.verify_morin(conf_ten)


@pytest.fixture(scope="session")
def vram_locus():
    return vt.singular_locus(vt.vram())


@pytest.fixture(scope="session")
def i4_std():
    return vt.linear_system_I4(vt.STANDARD_POINTS, vt.STANDARD_POINTS)


SMOOTHING_PATHS = {2: ["E1", "L12"], 3: ["L12", "E1", "L13"], 4: ["E2", "L12", "L34", "E4"]}


@pytest.fixture(scope="session")
def smoothings(y_std):
    out = {}
    for n, path in SMOOTHING_PATHS.items():
        c, rep = curves.partial_smoothing(y_std, path)
        out[n] = (c, rep, curves.build_configuration(c))
    return out


# one pass/fail line per acceptance criterion in the terminal summary
_ACCEPTANCE: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n = int(report.nodeid.split("test_criterion_")[1].split("_")[0])
        _ACCEPTANCE[n] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n:2d}: {_ACCEPTANCE[n]}")

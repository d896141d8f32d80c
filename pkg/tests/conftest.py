import pytest

from radmul.config import parse_config, preset_config
from radmul.symbols import ConstantTail, GeometricTail, RadialSymbol


@pytest.fixture(scope="session")
def dih_space():
    """Scalar base, two order-2 factors, words up to length 5 (dim 11)."""
    return parse_config(preset_config("dih")).space()


@pytest.fixture(scope="session")
def mat2_space():
    """M_2 base, two order-2 factors, one inner action (dim 44)."""
    return parse_config(preset_config("mat2")).space()


@pytest.fixture(scope="session")
def cy3_space():
    """Scalar base, two order-3 factors at length 4; exercises case-2 embeds."""
    cfg = preset_config("cy3")
    cfg["truncation"]["fock_len"] = 4
    return parse_config(cfg).space()


def symbol_zoo():
    """Symbols covering every tail kind, plus complex data."""
    return [
        RadialSymbol.delta0(),
        RadialSymbol.indicator01(),
        RadialSymbol.constant(1.0),
        RadialSymbol.constant(0.3 - 0.4j),
        RadialSymbol.geometric(0.5),
        RadialSymbol.geometric(0.3, coefficient=2.0),
        RadialSymbol.geometric(0.4 + 0.3j, coefficient=1.0 - 0.5j),
        RadialSymbol(head=(2.0, -1.0, 0.5j), tail=ConstantTail(0.25)),
        RadialSymbol(head=(1.0, 0.0, -0.5), tail=GeometricTail(0.8, 0.6, -0.2 + 0.1j)),
    ]


@pytest.fixture(scope="session")
def zoo():
    return symbol_zoo()


@pytest.fixture(scope="session")
def acceptance_symbols():
    """The four symbols named by the acceptance gate."""
    return [RadialSymbol.delta0(), RadialSymbol.indicator01(),
            RadialSymbol.geometric(0.5), RadialSymbol.constant(1.0)]

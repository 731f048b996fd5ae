import pytest

from codestab.models.code import StabilizerCode
from codestab.schemas.flow import FlowConstants
from codestab.services.constructors import hypergraph_product, repetition_code, repetition_tanner, toric_code


@pytest.fixture
def rep3() -> StabilizerCode:
    return repetition_code(3)


@pytest.fixture
def rep4() -> StabilizerCode:
    return repetition_code(4)


@pytest.fixture
def toric2() -> StabilizerCode:
    return toric_code(2)


@pytest.fixture
def toric3() -> StabilizerCode:
    return toric_code(3)


@pytest.fixture
def hgp_rep3() -> StabilizerCode:
    return hypergraph_product(repetition_tanner(3), repetition_tanner(3))


@pytest.fixture
def flow_consts() -> FlowConstants:
    return FlowConstants(kappa1=1.0)

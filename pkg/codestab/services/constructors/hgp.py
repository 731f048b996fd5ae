from codestab.core.exceptions import ContractViolationError
from codestab.models.bits import BitMatrix
from codestab.models.code import BipartiteTanner, StabilizerCode
from codestab.models.pauli import PauliString
from codestab.utils.bits import bit_indices


def repetition_tanner(n: int, cyclic: bool = False) -> BipartiteTanner:
    """Checks {j, j+1}; the cyclic version adds {n−1, 0}."""
    if n < 2:
        raise ContractViolationError("repetition code needs n >= 2")
    n_checks = n if cyclic else n - 1
    rows = [(1 << j) | (1 << ((j + 1) % n)) for j in range(n_checks)]
    name = f"rep{n}" + ("c" if cyclic else "")
    return BipartiteTanner(biadjacency=BitMatrix(cols=n, data=tuple(rows)), name=name)


def hypergraph_product(c1: BipartiteTanner, c2: BipartiteTanner) -> StabilizerCode:
    """CSS code on bit pairs (b, b̃) and check pairs (c, c̃).

    Qubit (b, b̃) is b·n₂ + b̃ and qubit (c, c̃) is n₁n₂ + c·m₂ + c̃. The
    Z-check (b, c̃) acts on (b, b̃) for b̃ ∈ c̃ and on (c, c̃) for c ∋ b; the
    X-check (c, b̃) acts on (c, c̃) for c̃ ∋ b̃ and on (b, b̃) for b ∈ c.
    X-checks come first.
    """
    n1, m1 = c1.n_bits, c1.n_checks
    n2, m2 = c2.n_bits, c2.n_checks
    if not (n1 and n2):
        raise ContractViolationError("Tanner graphs must have bits")
    n = n1 * n2 + m1 * m2
    h1, h2 = c1.biadjacency, c2.biadjacency
    checks_of_bit1 = h1.transpose().data
    checks_of_bit2 = h2.transpose().data

    def bb(b: int, bt: int) -> int:
        return b * n2 + bt

    def cc(c: int, ct: int) -> int:
        return n1 * n2 + c * m2 + ct

    x_checks = []
    for c in range(m1):
        for bt in range(n2):
            support = [cc(c, ct) for ct in bit_indices(checks_of_bit2[bt])]
            support += [bb(b, bt) for b in bit_indices(h1.data[c])]
            x_checks.append(PauliString.x_on(n, support))
    z_checks = []
    for b in range(n1):
        for ct in range(m2):
            support = [bb(b, bt) for bt in bit_indices(h2.data[ct])]
            support += [cc(c, ct) for c in bit_indices(checks_of_bit1[b])]
            z_checks.append(PauliString.z_on(n, support))
    checks = tuple(c for c in x_checks + z_checks if not c.is_identity)
    return StabilizerCode(
        n=n,
        checks=checks,
        name="hgp",
        metadata={"left": c1.name, "right": c2.name, "n1": n1, "m1": m1, "n2": n2, "m2": m2},
    )


def relabel(code: StabilizerCode, perm: list[int]) -> StabilizerCode:
    """Move qubit i to ``perm[i]``."""
    if sorted(perm) != list(range(code.n)):
        raise ContractViolationError("relabeling is not a permutation of the qubits")

    def move(bits: int) -> int:
        out = 0
        for i in bit_indices(bits):
            out |= 1 << perm[i]
        return out

    checks = tuple(
        PauliString(n=code.n, x=move(c.x), z=move(c.z), sign=c.sign) for c in code.checks
    )
    return code.model_copy(update={"checks": checks})

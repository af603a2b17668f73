"""Small named models used in docs, demos and tests."""
from .model import CausalModel, Mechanism, table_mechanism

BIN = ("0", "1")


def arsonists() -> CausalModel:
    """Two arsonists; the forest burns if either drops a match."""
    doms = {"U1": BIN, "U2": BIN, "A1": BIN, "A2": BIN, "B": BIN}
    return CausalModel(
        {"U1": BIN, "U2": BIN},
        {"A1": BIN, "A2": BIN, "B": BIN},
        {
            "A1": Mechanism(("U1",), {("0",): "0", ("1",): "1"}),
            "A2": Mechanism(("U2",), {("0",): "0", ("1",): "1"}),
            "B": table_mechanism(doms, ("A1", "A2"), lambda a, b: int(a == "1" or b == "1")),
        },
    )


def context(u1, u2) -> dict:
    return {"U1": str(u1), "U2": str(u2)}

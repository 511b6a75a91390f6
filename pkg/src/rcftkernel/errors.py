"""Exception hierarchy shared by all modules."""


class RCFTError(Exception):
    """Base class for every error raised by rcftkernel."""


class NotCoprime(RCFTError, ValueError):
    pass


class OrderMismatch(RCFTError, ValueError):
    pass


class InvalidKacData(RCFTError, ValueError):
    pass


class SchemaError(RCFTError, ValueError):
    pass


class AxiomViolation(RCFTError):
    """A modular-data axiom failed; ``axiom`` names it, ``witness`` locates it."""

    def __init__(self, axiom, witness=None, detail=""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} violated"
        if witness is not None:
            msg += f" at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NonIntegerFusion(RCFTError):
    def __init__(self, witness, value):
        self.witness = witness
        self.value = value
        super().__init__(f"fusion coefficient N{witness} = {value} is not a non-negative integer")


class NotMonomial(RCFTError):
    pass


class NotDiagonal(RCFTError):
    pass


class NotUnimodular(RCFTError, ValueError):
    pass


class BudgetExceeded(RCFTError):
    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"|SL2(Z/N)| = {required} exceeds enumeration budget {budget}")

"""Named exact residuals and reports built from them."""

__all__ = ["Check", "Report", "HopfReport"]


class Check:
    """One named residual; passes exactly when the residual is zero."""

    __slots__ = ("name", "residual", "expected_zero", "note")

    def __init__(self, name, residual, expected_zero=True, note=""):
        self.name = name
        self.residual = residual
        self.expected_zero = expected_zero
        self.note = note

    @property
    def residual_zero(self):
        r = self.residual
        if r is None:
            return False
        if isinstance(r, bool):
            return r
        if hasattr(r, "is_zero"):
            return r.is_zero()
        return all(x.is_zero() for x in r)

    @property
    def passed(self):
        return self.residual_zero == self.expected_zero

    def value(self):
        r = self.residual
        if r is None:
            return self.note or "error"
        if isinstance(r, bool):
            return "0" if r else (self.note or "nonzero")
        if hasattr(r, "is_zero"):
            return str(r)
        nonzero = [str(x) for x in r if not x.is_zero()]
        if not nonzero:
            return "0"
        return "[" + ", ".join(nonzero) + "]"

    def __repr__(self):
        return f"Check({self.name!r}, zero={self.residual_zero})"


class Report:
    def __init__(self, checks):
        self.checks = list(checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


HopfReport = Report

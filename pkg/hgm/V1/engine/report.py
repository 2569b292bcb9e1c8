from dataclasses import asdict, dataclass, field
from fractions import Fraction


def exact_str(value):
    """Render exact values the way records carry them ("num/den", ints, lists)."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(exact_str(v) for v in value) + "]"
    if hasattr(value, "to_json"):
        return exact_str(value.to_json())
    return str(value)


@dataclass
class CheckReport:
    """Outcome of one verification cell; lhs and rhs are set whenever a comparison ran."""

    check: str
    passed: bool
    q: int = None
    t: str = None
    map_name: str = None
    variant: str = ""
    lhs: str = None
    rhs: str = None
    residual: float = None
    skipped: bool = False
    reason: str = ""
    details: dict = field(default_factory=dict)
    timing: float = None

    @classmethod
    def compare(cls, check, lhs, rhs, **kwargs):
        return cls(check=check, passed=lhs == rhs, lhs=exact_str(lhs), rhs=exact_str(rhs), **kwargs)

    @classmethod
    def skip(cls, check, reason, **kwargs):
        return cls(check=check, passed=True, skipped=True, reason=reason, **kwargs)

    def sort_key(self):
        t_key = Fraction(self.t) if self.t and "[" not in self.t else Fraction(0)
        return (self.check, self.q if self.q is not None else -1, t_key, self.t or "",
                self.map_name or "", self.variant)

    def as_dict(self):
        return asdict(self)

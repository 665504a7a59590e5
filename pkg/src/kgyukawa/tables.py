"""Published ground-state and spectrum tables, stored as golden data.

Natural units throughout (hbar = c = m0 = 1). The comparison column of
the first table and its eta_exact column are reproduced verbatim from the
literature value and are never recomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Table1Row", "Table2Row", "TABLE_I", "TABLE_II"]


@dataclass(frozen=True)
class Table1Row:
    eta: float
    alpha: float
    eta_exact: float
    reference: float
    energy: float


@dataclass(frozen=True)
class Table2Row:
    n: int
    l: int
    eta: float
    alpha: float
    e_plus_m0: float
    e_plus_m1: float
    neg_e_minus_m0: float
    neg_e_minus_m1: float

    def columns(self):
        """(branch, m1, golden) triples of the four energy columns."""
        return (
            ("plus", 0.0, self.e_plus_m0),
            ("plus", 0.1, self.e_plus_m1),
            ("minus", 0.0, self.neg_e_minus_m0),
            ("minus", 0.1, self.neg_e_minus_m1),
        )


TABLE_I = (
    Table1Row(0.125, 0.01250, 0.83072460, 0.993484, 0.998702),
    Table1Row(0.125, 0.06250, 0.30947218, 0.997573, 0.999999),
    Table1Row(0.125, 0.09375, 0.12370738, 0.999030, 0.999542),
    Table1Row(0.125, 0.12500, 0.02452195, 0.999808, 0.998100),
    Table1Row(0.125, 0.14375, 0.00187260, 0.999985, 0.996759),
    Table1Row(0.25, 0.0250, 0.88881431, 0.971776, 0.994130),
    Table1Row(0.25, 0.1250, 0.35655334, 0.998678, 0.999960),
    Table1Row(0.25, 0.1875, 0.15650395, 0.995030, 0.998556),
    Table1Row(0.25, 0.2500, 0.04068600, 0.998708, 0.993138),
    Table1Row(0.25, 0.3000, 0.00257940, 0.999918, 0.985799),
)

TABLE_II = (
    Table2Row(0, 0, 0.1, 0.01, 0.999181, 0.411464, 0.998173, 0.394898),
    Table2Row(0, 0, 0.01, 0.1, 0.995475, 0.859773, 0.994475, 0.855513),
    Table2Row(1, 0, 0.1, 0.01, 0.999987, 0.614868, 0.998985, 0.602709),
    Table2Row(1, 0, 0.01, 0.1, 0.980294, 0.900967, 0.979294, 0.898992),
    Table2Row(1, 1, 0.1, 0.01, 0.999911, 0.638787, 0.998910, 0.627267),
    Table2Row(1, 1, 0.01, 0.1, 0.954438, 0.887484, 0.953438, 0.885983),
    Table2Row(2, 0, 0.1, 0.01, 0.999913, 0.712338, 0.998912, 0.702947),
    Table2Row(2, 0, 0.01, 0.1, 0.954440, 0.884025, 0.953440, 0.882563),
    Table2Row(2, 1, 0.1, 0.01, 0.999622, 0.725851, 0.998622, 0.716879),
    Table2Row(2, 1, 0.01, 0.1, 0.917015, 0.852051, 0.916015, 0.850766),
    Table2Row(2, 2, 0.1, 0.01, 0.999200, 0.748196, 0.998199, 0.739937),
    Table2Row(2, 2, 0.01, 0.1, 0.866525, 0.801327, 0.865525, 0.800141),
    Table2Row(10, 0, 0.1, 0.01, 0.994432, 0.888765, 0.993432, 0.885794),
    Table2Row(10, 5, 0.1, 0.01, 0.987613, 0.897157, 0.986613, 0.894680),
    Table2Row(10, 10, 0.1, 0.01, 0.978199, 0.900957, 0.977199, 0.898987),
)

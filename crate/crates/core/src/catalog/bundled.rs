//! Groups shipped as explicit permutation generators.

use crate::catalog::constructors::perms;
use crate::error::Result;
use crate::group::FiniteGroup;

pub const M11: &[&str] = &["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"];

pub const M22: &[&str] = &[
    "(1 2 3 4 5 6 7 8 9 10 11)(12 13 14 15 16 17 18 19 20 21 22)",
    "(1 4 5 9 3)(2 8 10 7 6)(12 15 16 20 14)(13 19 21 18 17)",
    "(1 21)(2 10 8 6)(3 13 4 17)(5 19 9 18)(11 22)(12 14 16 20)",
];

/// `Sz(8)` on the 65 points of the Tits ovoid over `F₈ = F₂[x]/(x³+x+1)`.
pub const SZ8: &[&str] = &[
    "(1 14)(2 43)(3 52)(4 21)(5 46)(6 27)(7 13)(8 56)(9 20)(10 42)(11 60)(12 25)(15 32)(16 53)(17 35)\
     (18 37)(19 49)(22 47)(23 55)(24 38)(26 28)(29 44)(30 58)(31 48)(33 64)(34 61)(36 62)(39 45)(40 41)\
     (50 59)(51 63)(54 57)",
    "(1 17 53 32)(2 65 15 52)(3 58 7 21)(4 38 61 60)(5 23 48 55)(6 14 62 24)(8 42 51 26)(9 39 16 37)\
     (10 35 47 44)(11 30 45 19)(12 33 50 13)(18 56 20 46)(22 41 29 31)(25 34 63 57)(27 59 54 40)\
     (28 36 43 49)",
];

pub fn mathieu11() -> Result<FiniteGroup> {
    FiniteGroup::new("M11", 11, perms(11, M11)?)
}

pub fn mathieu22() -> Result<FiniteGroup> {
    FiniteGroup::new("M22", 22, perms(22, M22)?)
}

pub fn suzuki8() -> Result<FiniteGroup> {
    FiniteGroup::new("Sz(8)", 65, perms(65, SZ8)?)
}

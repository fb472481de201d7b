//! Published reference data, transcribed as printed.

use crate::algebra::{energy_shift_factor, parse_poly, MPoly, Monomial, Var};

/// `Y₀(E; λ, β)`.
pub const Y0: &str = "E^2 - 2*L*E - B - 3*L^2";

pub fn y0() -> MPoly {
    parse_poly(Y0).expect("static polynomial")
}

/// One row of the factored termination-coefficient table:
/// `C_{n,d} = content · L^{l_power} · ∏ (E+L−k) · Y_y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AimEntry {
    pub n: usize,
    pub d: usize,
    pub content: i64,
    pub l_power: u32,
    /// Shifts `k` of the `(E+L−k)` factors, in printed order.
    pub ks: &'static [u32],
    /// Index of the trailing `Y` polynomial, if any.
    pub y: Option<usize>,
}

const fn e(
    n: usize,
    d: usize,
    content: i64,
    l_power: u32,
    ks: &'static [u32],
    y: Option<usize>,
) -> AimEntry {
    AimEntry {
        n,
        d,
        content,
        l_power,
        ks,
        y,
    }
}

pub const AIM_TABLE: &[AimEntry] = &[
    e(1, 2, 16, 2, &[1, 0], None),
    e(1, 1, 8, 1, &[1], Some(0)),
    e(1, 0, 1, 0, &[], Some(1)),
    e(2, 3, 64, 3, &[2, 1, 0], None),
    e(2, 2, 48, 2, &[2, 1], Some(0)),
    e(2, 1, 12, 1, &[2], Some(1)),
    e(2, 0, 1, 0, &[], Some(2)),
    e(3, 4, 256, 4, &[3, 2, 1, 0], None),
    e(3, 3, 256, 3, &[3, 2, 1], Some(0)),
    e(3, 2, 96, 2, &[3, 2], Some(1)),
    e(3, 1, 16, 1, &[3], Some(2)),
    e(3, 0, 1, 0, &[], Some(3)),
    e(4, 5, 1024, 5, &[4, 3, 2, 1, 0], None),
    e(4, 4, 1280, 4, &[4, 3, 2, 1], Some(0)),
    e(4, 3, 640, 3, &[4, 3, 2], Some(1)),
    e(4, 2, 160, 2, &[4, 3], Some(2)),
    e(4, 1, 20, 1, &[4], Some(3)),
    e(4, 0, 1, 0, &[], Some(4)),
    e(5, 6, 4096, 6, &[5, 4, 3, 2, 1, 0], None),
    e(5, 5, 1280, 5, &[5, 4, 3, 2, 1], Some(0)),
    e(5, 4, 3840, 4, &[5, 4, 3, 2], Some(1)),
    e(5, 3, 1280, 3, &[5, 4, 3], Some(2)),
    e(5, 2, 240, 2, &[5, 4], Some(3)),
    e(5, 1, 24, 1, &[5], Some(4)),
    e(5, 0, 1, 0, &[], Some(5)),
];

impl AimEntry {
    pub fn id(&self) -> String {
        format!("C_{}{}", self.n, self.d)
    }

    /// `content * L^a * (E+L-k1)*... * [Y_m]`.
    pub fn render(&self) -> String {
        let mut parts = vec![self.content.to_string()];
        match self.l_power {
            0 => {}
            1 => parts.push("L".into()),
            a => parts.push(format!("L^{a}")),
        }
        if !self.ks.is_empty() {
            let chain: Vec<String> = self
                .ks
                .iter()
                .map(|&k| if k == 0 { "(E+L)".to_string() } else { format!("(E+L-{k})") })
                .collect();
            parts.push(chain.join("*"));
        }
        if let Some(m) = self.y {
            parts.push(format!("[Y{m}]"));
        }
        parts.join(" * ")
    }

    /// The product with `Y_m` supplied by `y`.
    pub fn expand(&self, y: impl Fn(usize) -> MPoly) -> MPoly {
        let mut acc = MPoly::int(self.content).mul_monomial(&Monomial::of(Var::L, self.l_power));
        for &k in self.ks {
            acc = &acc * &energy_shift_factor(k);
        }
        match self.y {
            Some(m) => &acc * &y(m),
            None => acc,
        }
    }
}

pub fn aim_entries(n: usize) -> impl Iterator<Item = &'static AimEntry> {
    AIM_TABLE.iter().filter(move |e| e.n == n)
}

/// A row of the Juddian constraint table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JuddianRow {
    pub n: usize,
    pub energy: &'static str,
    pub polynomial: &'static str,
}

pub const JUDDIAN_TABLE: [JuddianRow; 5] = [
    JuddianRow {
        n: 1,
        energy: "1 - L",
        polynomial: "4*L + (B - 1)",
    },
    JuddianRow {
        n: 2,
        energy: "2 - L",
        polynomial: "32*L^2 + 4*(3*B - 8)*L + (B - 1)*(B - 4)",
    },
    JuddianRow {
        n: 3,
        energy: "3 - L",
        polynomial: "384*L^3 + 16*(11*B - 54)*L^2 + 8*(3*B^2 - 29*B + 54)*L \
                     + (B - 1)*(B - 4)*(B - 9)",
    },
    JuddianRow {
        n: 4,
        energy: "4 - L",
        polynomial: "6144*L^4 + 128*(25*B - 192)*L^3 + 16*(35*B^2 - 542*B + 1728)*L^2 \
                     + 8*(5*B^3 - 115*B^2 + 722*B - 1152)*L \
                     + (B - 1)*(B - 4)*(B - 9)*(B - 16)",
    },
    JuddianRow {
        n: 5,
        energy: "5 - L",
        polynomial: "122880*L^5 + 512*(137*B - 1500)*L^4 \
                     + 64*(225*B^2 - 5036*B + 24000)*L^3 \
                     + 16*(85*B^3 - 2867*B^2 + 27518*B - 72000)*L^2 \
                     + 4*(15*B^4 - 670*B^3 + 9551*B^2 - 49216*B + 72000)*L \
                     + (B - 1)*(B - 4)*(B - 9)*(B - 16)*(B - 25)",
    },
];

impl JuddianRow {
    pub fn poly(&self) -> MPoly {
        parse_poly(self.polynomial).expect("static polynomial")
    }

    pub fn energy_poly(&self) -> MPoly {
        parse_poly(self.energy).expect("static polynomial")
    }
}

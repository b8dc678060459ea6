//! Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{par, Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights on XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// The 15 Kronrod nodes of [a, b], in increasing order.
pub fn gk15_nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for i in 0..7 {
        x[i] = c - h * XGK[i];
        x[14 - i] = c + h * XGK[i];
    }
    x[7] = c;
    x
}

/// Combines integrand values at [`gk15_nodes`] into (K15, |K15 − G7|).
pub fn gk15_combine(a: f64, b: f64, f: &[f64; 15]) -> (f64, f64) {
    let h = 0.5 * (b - a);
    let mut k = WGK[7] * f[7];
    let mut g = WG[3] * f[7];
    for i in 0..7 {
        let pair = f[i] + f[14 - i];
        k += WGK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// One 15-point Kronrod panel: (estimate, error estimate).
pub fn gk15<F>(f: F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let x = gk15_nodes(a, b);
    let mut v = [0.0; 15];
    for (vi, &xi) in v.iter_mut().zip(&x) {
        *vi = f(xi)?;
    }
    Ok(gk15_combine(a, b, &v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error
            .total_cmp(&o.error)
            .then_with(|| o.a.total_cmp(&self.a))
    }
}

/// Globally adaptive integration over the initial panels `breaks`: the
/// panel with the largest error is bisected until the total error is below
/// max(abs_tol, rel_tol·|value|). Initial panels are evaluated in parallel.
pub fn integrate<F>(f: F, breaks: &[f64], abs_tol: f64, rel_tol: f64, max_panels: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if breaks.len() < 2 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    let spans: Vec<(f64, f64)> = breaks.windows(2).map(|w| (w[0], w[1])).collect();
    let first = par::try_map(&spans, |&(a, b)| gk15(&f, a, b).map(|(v, e)| Panel { a, b, value: v, error: e }))?;
    let mut heap: BinaryHeap<Panel> = first.into_iter().collect();
    loop {
        let (value, error) = totals(&heap);
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Estimate {
                value,
                error,
                panels: heap.len(),
            });
        }
        if heap.len() >= max_panels {
            let worst = heap.peek().expect("nonempty");
            return Err(Error::QuadratureStalled {
                lo: worst.a,
                hi: worst.b,
            });
        }
        let p = heap.pop().expect("nonempty");
        let m = 0.5 * (p.a + p.b);
        if !(m > p.a && m < p.b) {
            return Err(Error::QuadratureStalled { lo: p.a, hi: p.b });
        }
        for (a, b) in [(p.a, m), (m, p.b)] {
            let (value, error) = gk15(&f, a, b)?;
            heap.push(Panel { a, b, value, error });
        }
    }
}

/// Sum of values and errors in a fixed (position) order.
fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let v: Vec<f64> = panels.iter().map(|p| p.value).collect();
    let e: Vec<f64> = panels.iter().map(|p| p.error).collect();
    (par::pairwise_sum(&v), par::pairwise_sum(&e))
}

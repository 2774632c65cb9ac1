use num_traits::Zero;

use super::recognize_block_form;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::instance::Instance;
use crate::linalg::{rat, Scalar};

/// Outcome of the SL(n,ℍ) test by both methods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlReport {
    /// `∂̄(φ¹ ∧ … ∧ φ^{2n}) = 0`.
    pub method_a: bool,
    /// `a + ¼ tr f̃ = 0`, when the algebra is recognized as almost-abelian.
    pub method_b: Option<bool>,
    pub sl: bool,
    /// A σ-fixed multiple of the coframe volume, when SL.
    pub trivializing_form: Option<Form>,
}

pub fn sl_check(inst: &Instance) -> Result<SlReport> {
    let c = &inst.complex;
    c.require_integrable()?;
    let top: Vec<usize> = (0..c.half()).collect();
    let vol = c.theta(&top);
    let method_a = c.d(&vol).is_zero();
    let method_b = recognize_block_form(inst.algebra(), inst.triple(), &inst.gram, None)
        .ok()
        .map(|b| (b.a + rat(1, 4) * (0..b.f_tilde.rows()).map(|i| b.f_tilde[(i, i)].re.clone()).fold(Zero::zero(), |x: crate::linalg::Rational, y| x + y)).is_zero());
    if let Some(b) = method_b {
        if b != method_a {
            return Err(Error::MethodDisagreement {
                check: "sl".into(),
                detail: format!("direct test gives {method_a}, trace formula gives {b}"),
            });
        }
    }
    let trivializing_form = method_a.then(|| {
        let lambda = c.sigma(&vol).coefficient(&top);
        let minus_one = Scalar::from_i64(-1);
        let k = if lambda == minus_one { Scalar::i() } else { &Scalar::one() + &lambda };
        vol.scale(&k)
    });
    Ok(SlReport { method_a, method_b, sl: method_a, trivializing_form })
}

//! Call-by-name (L⅋) and call-by-value (L⊗) embeddings of λ-terms.

use crate::encodings::LambdaTerm;

use super::syntax::{cmd, Context, Term};
use super::Polarity;

/// `u·e`: `([u], e)` in L⅋, `μ[β].⟨(u,[e])‖β⟩` in L⊗.
pub fn stack(pol: Polarity, u: Term, e: Context, beta: &str) -> Context {
    match pol {
        Polarity::Par => Context::pair(Context::boxed(u), e),
        Polarity::Tens => Context::mu_box(beta, cmd(Term::pair(u, Term::boxed(e)), Context::covar(beta))),
    }
}

/// `λx.t`: `μ(α,β).⟨μ[x].⟨t‖β⟩‖α⟩` in L⅋, `[μ(x,x').⟨x'‖μ[β].⟨t‖β⟩⟩]` in L⊗.
pub fn lam(pol: Polarity, x: &str, body: Term, fresh: &mut Fresh) -> Term {
    match pol {
        Polarity::Par => {
            let (a, b) = (fresh.covar(), fresh.covar());
            let inner = Term::mu_box(x, cmd(body, Context::covar(&b)));
            Term::mu_pair(&a, &b, cmd(inner, Context::covar(&a)))
        }
        Polarity::Tens => {
            let (x2, b) = (fresh.var(), fresh.covar());
            let inner = Context::mu_box(&b, cmd(body, Context::covar(&b)));
            Term::boxed(Context::mu_pair(x, &x2, cmd(Term::var(&x2), inner)))
        }
    }
}

/// `t u := μα.⟨t‖u·α⟩` in both calculi.
pub fn app(pol: Polarity, t: Term, u: Term, fresh: &mut Fresh) -> Term {
    let a = fresh.covar();
    let b = fresh.covar();
    Term::mu(&a, cmd(t, stack(pol, u, Context::covar(&a), &b)))
}

/// Deterministic supply of binder names for embeddings.
#[derive(Debug, Default)]
pub struct Fresh {
    vars: usize,
    covars: usize,
}

impl Fresh {
    pub fn var(&mut self) -> String {
        self.vars += 1;
        format!("y{}", self.vars)
    }
    pub fn covar(&mut self) -> String {
        self.covars += 1;
        format!("k{}", self.covars)
    }
}

fn embed(pol: Polarity, t: &LambdaTerm, depth: usize, fresh: &mut Fresh) -> Term {
    match t {
        LambdaTerm::Var(i) => {
            assert!(*i < depth, "embedding needs a closed term");
            Term::Var(format!("x{}", depth - 1 - i))
        }
        LambdaTerm::Param(p) => Term::Param(*p),
        LambdaTerm::Lam(body) => {
            let b = embed(pol, body, depth + 1, fresh);
            lam(pol, &format!("x{depth}"), b, fresh)
        }
        LambdaTerm::App(f, x) => {
            let f = embed(pol, f, depth, fresh);
            let x = embed(pol, x, depth, fresh);
            app(pol, f, x, fresh)
        }
    }
}

pub fn embed_lambda(pol: Polarity, t: &LambdaTerm) -> Term {
    embed(pol, t, 0, &mut Fresh::default())
}

pub fn embed_lambda_cbn(t: &LambdaTerm) -> Term {
    embed_lambda(Polarity::Par, t)
}

pub fn embed_lambda_cbv(t: &LambdaTerm) -> Term {
    embed_lambda(Polarity::Tens, t)
}

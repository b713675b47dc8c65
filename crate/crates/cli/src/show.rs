use k3rm::field::{format_rational, Field, Rationals};
use k3rm::numfield::Embedding;
use k3rm::quadext::QuadraticExtension;
use k3rm::serial::format_element;

/// Human-readable exact rendering of field elements.
pub trait Show: Field {
    fn show(&self, a: &Self::Elem) -> String;

    fn show_vec(&self, v: &[Self::Elem]) -> Vec<String> {
        v.iter().map(|x| self.show(x)).collect()
    }
}

impl Show for Rationals {
    fn show(&self, a: &Self::Elem) -> String {
        format_rational(a)
    }
}

impl Show for Embedding {
    fn show(&self, a: &Self::Elem) -> String {
        format_element(self.field(), a)
    }
}

impl Show for QuadraticExtension<Embedding> {
    fn show(&self, x: &Self::Elem) -> String {
        let base = self.base();
        match (base.is_zero(&x.a), base.is_zero(&x.b)) {
            (_, true) => base.show(&x.a),
            (true, false) => format!("({})*sqrt(p)", base.show(&x.b)),
            (false, false) => format!("({}) + ({})*sqrt(p)", base.show(&x.a), base.show(&x.b)),
        }
    }
}

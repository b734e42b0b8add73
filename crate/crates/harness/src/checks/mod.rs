use crate::Criterion;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

mod annular;
mod auxiliary;
mod cobordisms;
mod identities;
mod involutions;
mod partitions;

pub(crate) static ALL: &[Criterion] = &[
    Criterion { id: "C01", anchor: "partition composition: associativity and dead-block cocycle", run: partitions::axioms },
    Criterion { id: "C02", anchor: "partition involution laws and dead blocks of x x*", run: partitions::star_laws },
    Criterion { id: "C03", anchor: "cobordism composition associativity", run: cobordisms::associativity },
    Criterion { id: "C04", anchor: "regularity x x* x = x for deformed, labelled and cobordism stars", run: cobordisms::regularity },
    Criterion { id: "C05", anchor: "anti-automorphism of the labelled star; deformed star criterion", run: cobordisms::anti_automorphism },
    Criterion { id: "C06", anchor: "structural idempotency test", run: partitions::idempotents },
    Criterion { id: "C07", anchor: "closed-form fibre products over irreducible idempotents", run: cobordisms::fibres },
    Criterion { id: "C08", anchor: "the map from the discrete fibre onto A2", run: cobordisms::a2_map },
    Criterion { id: "C09", anchor: "affine diagrams: validation, rotation powers, shift laws", run: annular::affine },
    Criterion { id: "C10", anchor: "circle counting and circle-labelled composition", run: annular::circles },
    Criterion { id: "C11", anchor: "structure of the annular monoid on three points", run: annular::ann3 },
    Criterion { id: "C12", anchor: "rank-one idempotent pair with product of infinite order", run: annular::infinite_order },
    Criterion { id: "C13", anchor: "extreme representation, normal and canonical forms", run: identities::engine },
    Criterion { id: "C14", anchor: "Zimin values in the semidirect product", run: auxiliary::zimin_values },
    Criterion { id: "C15", anchor: "Rees ideal powers and the doubled circle summand", run: auxiliary::rees },
    Criterion { id: "C16", anchor: "involution laws across all families", run: involutions::laws },
];

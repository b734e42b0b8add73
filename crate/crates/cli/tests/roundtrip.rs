use diagram_cli::compose::{compose_values, parse_annular, parse_deformed_annular, Category};
use diagram_cli::json;
use diagram_core::annular::{AffinePair, AffineTriple, AnnularPartition, DeformedAnnular};
use diagram_core::identities::{parse_identity, parse_word, Alphabet, Mode};
use diagram_harness::gen::{self, AffinePool};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Through a JSON string and back.
fn text<T: Serialize + DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
}

#[test]
fn partition_families_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let regular = i % 2 == 0;
        let (m, n) = (gen::shape(&mut rng, 4), gen::shape(&mut rng, 4));
        let p = gen::partition(&mut rng, m, n);
        assert_eq!(json::parse_partition(&text(&json::partition(&p))).unwrap(), p);
        let d = gen::deformed(&mut rng, m, n, regular);
        assert_eq!(json::parse_deformed(&text(&json::deformed(&d)), regular).unwrap(), d);
        let l = gen::labeled(&mut rng, m, n, regular);
        assert_eq!(json::parse_labeled(&text(&json::labeled(&l)), regular).unwrap(), l);
        let c = gen::cobordism(&mut rng, m, n, regular);
        assert_eq!(json::parse_cobordism(&text(&json::cobordism(&c)), regular).unwrap(), c);
    }
}

#[test]
fn affine_families_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool = AffinePool::new(4, 2);
    for i in 0..500 {
        let regular = i % 2 == 0;
        let a = pool.any(&mut rng);
        assert_eq!(json::parse_affine(&text(&json::affine(&a))).unwrap(), a);
        let lo = if regular { -2 } else { 0 };
        let k = if a.rank() == 0 { rng.gen_range(lo..=2) } else { 0 };
        let p = AffinePair::new(a.clone(), k, regular).unwrap();
        assert_eq!(json::parse_pair(&text(&json::pair(&p)), regular).unwrap(), p);
        let t = AffineTriple::new(a.clone(), k, rng.gen_range(lo..=2), regular).unwrap();
        assert_eq!(json::parse_triple(&text(&json::triple(&t)), regular).unwrap(), t);

        let ann = AnnularPartition::from_affine(&a);
        let v = serde_json::to_value(json::annular(&ann)).unwrap();
        assert_eq!(parse_annular(&v).unwrap(), ann);
        let d = DeformedAnnular::from_triple(&t);
        let v = serde_json::to_value(json::deformed_annular(&d)).unwrap();
        assert_eq!(parse_deformed_annular(&v, regular).unwrap(), d);
    }
}

#[test]
fn genus_maps_are_keyed_by_least_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c = gen::cobordism(&mut rng, 2, 2, false);
    let j = json::cobordism(&c);
    let keys: Vec<&String> = j.genus.as_ref().unwrap().keys().collect();
    for b in 0..c.base().num_blocks() {
        let key = json::vertex_key(c.base().least_vertex(b));
        assert!(keys.contains(&&key), "{key} missing from {keys:?}");
    }
    let mut broken = j.clone();
    broken.genus.as_mut().unwrap().clear();
    assert!(json::parse_cobordism(&broken, false).is_err());
}

#[test]
fn composing_identities_gives_the_identity() {
    let id = serde_json::to_value(json::partition(&diagram_core::Partition::identity(3))).unwrap();
    for cat in ["P", "Ann"] {
        let r = compose_values(cat.parse::<Category>().unwrap(), &[id.clone(), id.clone()]).unwrap();
        assert_eq!(r["product"], id, "{cat}");
    }
}

#[test]
fn words_round_trip_through_rendering() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let names = ["t", "x", "y", "z", "x2", "x10"];
    for _ in 0..1_000 {
        let len = rng.gen_range(1..=12);
        let word: String = (0..len)
            .map(|_| {
                let star = if rng.gen_bool(0.3) { "*" } else { "" };
                format!("{}{star} ", names[rng.gen_range(0..names.len())])
            })
            .collect();
        let (w, alpha) = parse_word(&word).unwrap();
        let rendered = alpha.render(&w);
        let (again, alpha2) = parse_word(&rendered).unwrap();
        assert_eq!(alpha2.render(&again), rendered, "{word}");
        assert_eq!(again.len(), w.len());
        let (id, a) = parse_identity(&format!("{rendered} = {rendered}"), Mode::Monoid).unwrap();
        assert_eq!(id.lhs, id.rhs);
        assert_eq!(a, Alphabet::from_names(names.iter().map(|s| s.to_string()).filter(|n| a.index_of(n).is_some())));
    }
}

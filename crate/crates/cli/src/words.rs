use std::io::Write;

use diagram_core::annular::build_ann_monoid;
use diagram_core::identities::{canonical_form, extreme_rep, normal_form, parse_word, to_plain, Alphabet};
use diagram_core::partitions::{enumerate_partitions, idempotent_decomposition};

use crate::{write_out, CliError};

fn render_or_one(alpha: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        alpha.render_plain(w)
    }
}

/// Extreme representation, interior blocks and normal form of a word
/// without starred letters; with `canonical`, also its canonical form.
pub fn normalform_lines(word: &str, canonical: bool) -> Result<Vec<String>, CliError> {
    let (w, alpha) = parse_word(word).map_err(|e| CliError::Parse(e.to_string()))?;
    let w = to_plain(&w).ok_or_else(|| CliError::Parse("normal forms are defined for words without stars".to_string()))?;
    let rep = extreme_rep(&w).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut factors = vec![alpha.name(rep.e[0])];
    for (u, &z) in rep.blocks.iter().zip(&rep.e[1..]) {
        factors.push(render_or_one(&alpha, u));
        factors.push(alpha.name(z));
    }
    let blocks: Vec<String> = rep.blocks.iter().map(|u| render_or_one(&alpha, u)).collect();
    let nf = normal_form(&w).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut lines = vec![
        format!("extreme representation: {}", factors.join(" · ")),
        format!("e: {}", alpha.render_plain(&rep.e)),
        format!("interior blocks: {}", blocks.join(", ")),
        format!("normal form: {}", alpha.render_plain(&nf)),
    ];
    if canonical {
        let cf = canonical_form(&w).map_err(|e| CliError::Parse(e.to_string()))?;
        lines.push(format!("canonical form: {}", alpha.render_plain(&cf)));
    }
    Ok(lines)
}

pub fn cmd_normalform(word: &str, canonical: bool, out: &mut impl Write) -> Result<i32, CliError> {
    for line in normalform_lines(word, canonical)? {
        write_out(out, &line)?;
    }
    Ok(0)
}

/// Idempotents of `P` (with their irreducible decompositions) or `Ann` on
/// `[n]`.
pub fn cmd_idempotents(n: usize, category: &str, out: &mut impl Write) -> Result<i32, CliError> {
    match category {
        "P" => {
            let mut total = 0;
            let mut found = 0;
            for p in enumerate_partitions(n, n).map_err(|e| CliError::Invalid(e.to_string()))? {
                total += 1;
                let Some(comps) = idempotent_decomposition(&p).map_err(|e| CliError::Invalid(e.to_string()))? else {
                    continue;
                };
                found += 1;
                let parts: Vec<String> = comps
                    .iter()
                    .map(|c| {
                        let ground: Vec<String> = c.ground.iter().map(usize::to_string).collect();
                        format!("{{{}}} rank {}", ground.join(","), c.rank)
                    })
                    .collect();
                write_out(out, &format!("{p}  components: {}", parts.join("; ")))?;
            }
            write_out(out, &format!("{found} idempotents among {total} partitions of [{n}]"))?;
        }
        "Ann" => {
            let ann = build_ann_monoid(n).map_err(|e| CliError::Invalid(e.to_string()))?;
            for &(i, rank) in &ann.idempotents {
                write_out(out, &format!("{}  rank {rank}", ann.elements[i]))?;
            }
            write_out(out, &format!("{} idempotents among {} elements of Ann{n}", ann.idempotents.len(), ann.elements.len()))?;
        }
        _ => return Err(CliError::Usage(format!("idempotents are listed for P and Ann, not {category}"))),
    }
    Ok(0)
}

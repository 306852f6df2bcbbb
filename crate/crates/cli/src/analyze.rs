use std::io::Write;
use std::path::Path;

use polyprime_core::canonical::{hermite_matrix, kronecker_hermite_form};
use polyprime_core::convcode::{code_from_system, ConvCode};
use polyprime_core::field::FieldElem;
use polyprime_core::io::{parse_document, Document};
use polyprime_core::polymatrix::{
    are_left_coprime, block_bidiagonal, mutually_left_coprime, pairwise_left_coprime,
    rank_drop_witness,
};
use polyprime_core::systems::{
    is_minimal, is_observable, is_reachable, right_coprime_factorization,
};
use polyprime_core::{Matrix, PolyMatrix, StateSpace};

use crate::{Failure, Outcome};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn show_witness(w: &FieldElem) -> String {
    let f = w.field();
    if f.degree() == 1 {
        format!("z = {} in GF({})", w.elem(), f.characteristic())
    } else {
        let coeffs: Vec<String> = w.coeffs().iter().map(|c| c.to_string()).collect();
        format!(
            "z = ({}) in GF({}), coordinates over GF({})",
            coeffs.join(", "),
            f.notation(),
            f.characteristic()
        )
    }
}

fn scalar(m: &Matrix) -> String {
    PolyMatrix::from_scalar(m).to_string()
}

pub(crate) fn cmd_analyze(path: &Path, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc =
        parse_document(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    match doc {
        Document::Matrix(m) => matrix_report(&m, out),
        Document::Matrices(ms) => family_report(&ms, out),
        Document::Generator(g) => generator_report(&g, out),
        Document::System(s) => system_report(&s, out),
    }
}

fn matrix_report(m: &PolyMatrix, out: &mut dyn Write) -> Outcome {
    writeln!(
        out,
        "matrix {}x{} over GF({})",
        m.rows(),
        m.cols(),
        m.field().notation()
    )?;
    writeln!(out, "  {m}")?;
    if m.is_square() {
        let det = m.det()?;
        writeln!(out, "determinant: {det}")?;
        if det.is_zero() {
            writeln!(out, "singular")?;
            return Ok(());
        }
        if m.is_unimodular() {
            writeln!(out, "unimodular; Hermite form = I")?;
        }
        let h = hermite_matrix(m)?;
        writeln!(out, "Hermite form: {}", h.matrix())?;
        writeln!(
            out,
            "  row degrees {:?}, kappa {:?}",
            h.row_degrees(),
            h.kappa()
        )?;
        let (kh, _) = kronecker_hermite_form(m)?;
        writeln!(out, "Kronecker-Hermite form: {}", kh.matrix())?;
        writeln!(out, "  column degrees {:?}", kh.column_degrees())?;
        writeln!(out, "column proper: {}", yes_no(m.is_column_proper()))?;
        return Ok(());
    }
    let prime = if m.rows() < m.cols() {
        writeln!(out, "maximal minor gcd: {}", m.maximal_minor_gcd())?;
        ("left prime", m.is_left_prime()?)
    } else {
        writeln!(out, "maximal minor gcd: {}", m.maximal_minor_gcd())?;
        ("right prime", m.is_right_prime()?)
    };
    writeln!(out, "{}: {}", prime.0, yes_no(prime.1))?;
    if !prime.1 {
        let target = if m.rows() < m.cols() {
            m.clone()
        } else {
            m.transpose()
        };
        if let Some(w) = rank_drop_witness(&target)? {
            writeln!(out, "  rank drops at {}", show_witness(&w))?;
        }
    }
    Ok(())
}

fn family_report(ms: &[PolyMatrix], out: &mut dyn Write) -> Outcome {
    writeln!(out, "{} matrices", ms.len())?;
    for (i, m) in ms.iter().enumerate() {
        writeln!(out, "  D{} = {m}", i + 1)?;
    }
    if ms.len() < 2 {
        return Err(Failure::Usage(
            "coprimeness needs at least two matrices".into(),
        ));
    }
    let pairwise = pairwise_left_coprime(ms)?;
    write!(out, "pairwise left coprime: {}", yes_no(pairwise))?;
    if !pairwise {
        'outer: for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                let pair = [ms[i].clone(), ms[j].clone()];
                if !are_left_coprime(&pair)? {
                    write!(out, " (D{} and D{}", i + 1, j + 1)?;
                    let joined = ms[i].hstack(&ms[j])?;
                    if let Some(w) = rank_drop_witness(&joined)? {
                        write!(out, " lose rank at {}", show_witness(&w))?;
                    }
                    write!(out, ")")?;
                    break 'outer;
                }
            }
        }
    }
    writeln!(out)?;
    let mutual = mutually_left_coprime(ms)?;
    write!(out, "mutually left coprime: {}", yes_no(mutual))?;
    if !mutual {
        let block = block_bidiagonal(ms)?;
        match rank_drop_witness(&block)? {
            Some(w) => write!(out, " (block matrix singular at {})", show_witness(&w))?,
            None => write!(out, " (block matrix rank deficient)")?,
        }
    }
    writeln!(out)?;
    Ok(())
}

fn generator_report(g: &PolyMatrix, out: &mut dyn Write) -> Outcome {
    let code = ConvCode::new(g.clone())?;
    writeln!(
        out,
        "generator {}x{} over GF({}): rate {}/{}",
        g.rows(),
        g.cols(),
        g.field().notation(),
        code.dimension(),
        code.length()
    )?;
    writeln!(out, "  {g}")?;
    code_lines(&code, out)
}

fn code_lines(code: &ConvCode, out: &mut dyn Write) -> Outcome {
    writeln!(out, "degree: {}", code.degree())?;
    writeln!(out, "order: {}", code.order())?;
    writeln!(
        out,
        "minimal basis (column proper): {}",
        yes_no(code.is_minimal_basis())
    )?;
    if code.is_noncatastrophic() {
        writeln!(out, "non-catastrophic (right-prime: yes)")?;
    } else {
        write!(out, "catastrophic (right-prime: no)")?;
        if let Some(w) = rank_drop_witness(&code.generator().transpose())? {
            write!(out, "; generator loses rank at {}", show_witness(&w))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn system_report(s: &StateSpace, out: &mut dyn Write) -> Outcome {
    writeln!(
        out,
        "system over GF({}) with n={} states, m={} inputs, p={} outputs",
        s.field().notation(),
        s.n(),
        s.m(),
        s.p()
    )?;
    writeln!(out, "  A = {}", scalar(s.a()))?;
    writeln!(out, "  B = {}", scalar(s.b()))?;
    writeln!(out, "  C = {}", scalar(s.c()))?;
    writeln!(out, "  D = {}", scalar(s.d()))?;
    let reachable = is_reachable(s.a(), s.b())?;
    let observable = is_observable(s.a(), s.c())?;
    writeln!(out, "reachable: {}", yes_no(reachable))?;
    writeln!(out, "observable: {}", yes_no(observable))?;
    writeln!(out, "minimal: {}", yes_no(is_minimal(s)))?;
    let fr = right_coprime_factorization(s)?;
    writeln!(out, "right coprime fraction T = P Q^-1:")?;
    writeln!(out, "  P = {}", fr.p)?;
    writeln!(out, "  Q = {}", fr.q.matrix())?;
    writeln!(out, "  McMillan degree {}", fr.degree())?;
    match code_from_system(s) {
        Ok(code) => {
            writeln!(
                out,
                "induced code: rate {}/{}, generator {}",
                code.dimension(),
                code.length(),
                code.generator()
            )?;
            code_lines(&code, out)?;
        }
        Err(e) => writeln!(out, "induced code: unavailable ({e})")?,
    }
    Ok(())
}

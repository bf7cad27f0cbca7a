//! Isomorphic patterns share one canonical form.

use kgmotive::Pattern;

pub fn main() -> kgmotive::Result<()> {
    // A 2-cycle with a tail, written three ways. Negative labels are
    // variables, the rest are constants.
    let written = [
        vec![(-1, 0, -2), (-2, 0, -1), (-2, 1, 5)],
        vec![(-2, 0, -1), (-1, 1, 5), (-1, 0, -2)],
        vec![(-1, 1, 5), (-2, 0, -1), (-1, 0, -2)],
    ];
    let mut forms = Vec::new();
    for labels in &written {
        let p = Pattern::from_labels(labels)?;
        let c = p.canonicalize()?;
        println!("{:?}\n  -> {:?}", p.to_labels(), c.to_labels());
        forms.push(c);
    }
    assert!(forms.windows(2).all(|w| w[0] == w[1]));

    // Reversing the tail edge gives a different pattern.
    let other = Pattern::from_labels(&[(-1, 0, -2), (-2, 0, -1), (5, 1, -2)])?.canonicalize()?;
    println!("different pattern: {}", other != forms[0]);
    Ok(())
}

//! Lexicographic tuple enumeration shared by the closure loops.

/// Visits every tuple over `0..hi` of length `arity` with at least one
/// coordinate `>= lo`, in lexicographic order.
///
/// With `lo == 0` this is every tuple. Fixpoint loops pass the start of the
/// previous round's additions as `lo` so each combination is visited once.
pub(crate) fn for_each_touching(
    arity: usize,
    lo: usize,
    hi: usize,
    mut visit: impl FnMut(&[usize]),
) {
    let mut buf = vec![0; arity];
    descend(0, lo, hi, false, &mut buf, &mut visit);
}

fn descend(
    pos: usize,
    lo: usize,
    hi: usize,
    touched: bool,
    buf: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == buf.len() {
        if touched || lo == 0 {
            visit(buf);
        }
        return;
    }
    let start = if !touched && lo > 0 && pos + 1 == buf.len() {
        lo
    } else {
        0
    };
    for v in start..hi {
        buf[pos] = v;
        descend(pos + 1, lo, hi, touched || v >= lo, buf, visit);
    }
}

/// Every tuple over `0..n` of length `arity`, lexicographic.
pub(crate) fn for_each(arity: usize, n: usize, visit: impl FnMut(&[usize])) {
    for_each_touching(arity, 0, n, visit);
}

/// Lexicographic index of `args` over a carrier of size `n`, leftmost most significant.
pub(crate) fn encode(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

pub(crate) fn decode(mut index: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

/// Fan-out of an `layers`-layer heap sized for `capacity` keys:
/// `round(2^((log2 N)^((M-1)/M)))`, at least 2, with `N` clamped to 4 from
/// below. One layer is a plain binary heap.
///
/// The result is deliberately not rounded to a power of two.
pub fn compute_arity(layers: u32, capacity: u64) -> usize {
    if layers <= 1 {
        return 2;
    }
    let n = capacity.max(4) as f64;
    let exponent = f64::from(layers - 1) / f64::from(layers);
    let k = n.log2().powf(exponent).exp2().round();
    (k as usize).max(2)
}

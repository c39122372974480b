/// Majority of three decoded bits.
pub fn rep3_majority(bits: [bool; 3]) -> bool {
    let ones = bits.iter().filter(|&&b| b).count();
    ones >= 2
}

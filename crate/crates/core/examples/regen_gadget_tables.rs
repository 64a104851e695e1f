//! Regenerate the checked-in gadget table data file.
//!
//! Usage: cargo run -p mrpp-core --release --example regen_gadget_tables

use mrpp_core::motion::gadget::{compute_gadget_tables, serialize_tables};

fn main() {
    let tables = compute_gadget_tables();
    let text = serialize_tables(&tables);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/gadget_tables.txt");
    std::fs::write(path, &text).expect("write gadget tables");
    let max3 = tables.three_by_two.iter().map(|s| s.len()).max().unwrap();
    let max4 = tables.four_by_two.iter().map(|s| s.len()).max().unwrap();
    println!("wrote {path}: 3x2 max {max3} steps, 4x2 max {max4} steps");
}

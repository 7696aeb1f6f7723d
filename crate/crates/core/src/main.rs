fn main() { println!("cli comes later"); }

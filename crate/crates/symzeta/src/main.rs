fn main() {
    println!("symzeta");
}

fn main() {
    println!("teststrat");
}

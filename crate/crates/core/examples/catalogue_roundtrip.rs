//! Parses a catalogue with an irrational realization, serializes it and
//! parses it back.

use linarr::catalogue::{parse, serialize};

const TEXT: &str = "
# the braid arrangement over Q(sqrt 3)
arrangement braid
field Qsqrt 3
line 1 0 0
line 1 -sqrt(3) 0
line 1 sqrt(3) 0
line 0 2 1
line sqrt(3) 1 -1
line sqrt(3) -1 1
end
";

fn main() {
    let file = parse(TEXT).unwrap();
    let e = &file.entries[0];
    println!("{}: d={} t={}", e.name, e.d, e.t);
    let text = serialize(&file);
    print!("{text}");
    assert_eq!(parse(&text).unwrap(), file);
    match parse("arrangement A(19.5)\nlines 19\nend\n") {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => unreachable!(),
    }
}

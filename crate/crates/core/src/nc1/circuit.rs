use std::collections::HashMap;
use std::fmt::Write as _;

use super::CircuitError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    And,
    Or,
    Not,
}

impl GateKind {
    fn fan_in(self) -> usize {
        match self {
            GateKind::And | GateKind::Or => 2,
            GateKind::Not => 1,
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
        }
    }
}

/// A reference to an input (by declaration order) or a gate (by position).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wire {
    Input(usize),
    Gate(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub operands: Vec<Wire>,
}

/// A fan-in-2 boolean circuit over AND/OR/NOT. Gates are stored in
/// topological order, so every operand precedes its gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    output: Wire,
}

struct RawGate {
    line: usize,
    id: String,
    kind: GateKind,
    operands: Vec<String>,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the line-oriented circuit language:
///
/// ```text
/// # comment
/// in x1
/// in x2
/// g1 = AND x1 x2
/// g2 = NOT g1
/// out g2
/// ```
///
/// Gates may appear in any order; cycles are rejected.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut inputs: Vec<String> = Vec::new();
    let mut raw: Vec<RawGate> = Vec::new();
    let mut output: Option<(usize, String)> = None;
    let mut defined: HashMap<String, usize> = HashMap::new();

    let syntax = |line: usize, msg: String| CircuitError::Syntax { line, msg };
    let mut last_line = 0;

    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "in" => {
                let [_, name] = tokens[..] else {
                    return Err(syntax(line, "expected `in <name>`".into()));
                };
                if !is_ident(name) {
                    return Err(syntax(line, format!("bad wire name `{name}`")));
                }
                if defined.insert(name.to_string(), line).is_some() {
                    return Err(syntax(line, format!("wire `{name}` defined twice")));
                }
                inputs.push(name.to_string());
            }
            "out" => {
                let [_, name] = tokens[..] else {
                    return Err(syntax(line, "expected `out <id>`".into()));
                };
                if output.is_some() {
                    return Err(syntax(line, "second `out` line".into()));
                }
                output = Some((line, name.to_string()));
            }
            id => {
                if tokens.len() < 3 || tokens[1] != "=" {
                    return Err(syntax(line, format!("unrecognized line `{content}`")));
                }
                if !is_ident(id) {
                    return Err(syntax(line, format!("bad wire name `{id}`")));
                }
                let kind = match tokens[2] {
                    "AND" => GateKind::And,
                    "OR" => GateKind::Or,
                    "NOT" => GateKind::Not,
                    other => return Err(syntax(line, format!("unknown gate kind `{other}`"))),
                };
                let operands: Vec<String> = tokens[3..].iter().map(|s| s.to_string()).collect();
                if operands.len() != kind.fan_in() {
                    return Err(CircuitError::FanInViolation {
                        line,
                        gate: id.to_string(),
                        expected: kind.fan_in(),
                        found: operands.len(),
                    });
                }
                if let Some(bad) = operands.iter().find(|o| !is_ident(o)) {
                    return Err(syntax(line, format!("bad wire name `{bad}`")));
                }
                if defined.insert(id.to_string(), line).is_some() {
                    return Err(syntax(line, format!("wire `{id}` defined twice")));
                }
                raw.push(RawGate {
                    line,
                    id: id.to_string(),
                    kind,
                    operands,
                });
            }
        }
    }

    let gate_pos: HashMap<&str, usize> = raw
        .iter()
        .enumerate()
        .map(|(i, g)| (g.id.as_str(), i))
        .collect();

    // Depth-first topological sort; undefined names are skipped here and
    // reported afterwards so that self-references surface as cycles.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut marks = vec![Mark::New; raw.len()];
    let mut order: Vec<usize> = Vec::with_capacity(raw.len());
    for root in 0..raw.len() {
        if marks[root] != Mark::New {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        marks[root] = Mark::Active;
        while let Some(&(g, next)) = stack.last() {
            if let Some(op) = raw[g].operands.get(next) {
                stack.last_mut().unwrap().1 += 1;
                if let Some(&child) = gate_pos.get(op.as_str()) {
                    match marks[child] {
                        Mark::Active => {
                            return Err(CircuitError::CycleDetected {
                                line: raw[child].line,
                                wire: raw[child].id.clone(),
                            })
                        }
                        Mark::New => {
                            marks[child] = Mark::Active;
                            stack.push((child, 0));
                        }
                        Mark::Done => {}
                    }
                }
            } else {
                marks[g] = Mark::Done;
                order.push(g);
                stack.pop();
            }
        }
    }

    let input_pos: HashMap<&str, usize> = inputs
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut new_index = vec![0; raw.len()];
    for (pos, &g) in order.iter().enumerate() {
        new_index[g] = pos;
    }
    let resolve = |name: &str, line: usize| -> Result<Wire, CircuitError> {
        if let Some(&i) = input_pos.get(name) {
            Ok(Wire::Input(i))
        } else if let Some(&g) = gate_pos.get(name) {
            Ok(Wire::Gate(new_index[g]))
        } else {
            Err(CircuitError::UndefinedWire {
                line,
                name: name.to_string(),
            })
        }
    };

    let mut gates = Vec::with_capacity(raw.len());
    for &g in &order {
        let r = &raw[g];
        let operands = r
            .operands
            .iter()
            .map(|o| resolve(o, r.line))
            .collect::<Result<Vec<_>, _>>()?;
        gates.push(Gate {
            id: r.id.clone(),
            kind: r.kind,
            operands,
        });
    }
    let (out_line, out_name) =
        output.ok_or_else(|| syntax(last_line.max(1), "missing `out` line".into()))?;
    let output = resolve(&out_name, out_line)?;
    Ok(Circuit {
        inputs,
        gates,
        output,
    })
}

impl Circuit {
    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> Wire {
        self.output
    }

    pub fn depth(&self) -> usize {
        circuit_depth(self)
    }

    /// Evaluates the circuit; `bits[i]` feeds the `i`-th declared input.
    pub fn eval(&self, bits: &[bool]) -> bool {
        assert!(bits.len() >= self.inputs.len(), "missing circuit inputs");
        let mut values = Vec::with_capacity(self.gates.len());
        let read = |w: Wire, values: &Vec<bool>| match w {
            Wire::Input(i) => bits[i],
            Wire::Gate(g) => values[g],
        };
        for gate in &self.gates {
            let v = match gate.kind {
                GateKind::And => read(gate.operands[0], &values) && read(gate.operands[1], &values),
                GateKind::Or => read(gate.operands[0], &values) || read(gate.operands[1], &values),
                GateKind::Not => !read(gate.operands[0], &values),
            };
            values.push(v);
        }
        read(self.output, &values)
    }

    /// Rewrites every `OR a b` as `NOT (AND (NOT a) (NOT b))`.
    pub fn de_morgan(&self) -> Circuit {
        let mut gates: Vec<Gate> = Vec::new();
        let mut remap: Vec<usize> = Vec::with_capacity(self.gates.len());
        let map = |w: Wire, remap: &Vec<usize>| match w {
            Wire::Input(i) => Wire::Input(i),
            Wire::Gate(g) => Wire::Gate(remap[g]),
        };
        for gate in &self.gates {
            let operands: Vec<Wire> = gate.operands.iter().map(|&w| map(w, &remap)).collect();
            if gate.kind == GateKind::Or {
                let base = gates.len();
                gates.push(Gate {
                    id: format!("{}__not_a", gate.id),
                    kind: GateKind::Not,
                    operands: vec![operands[0]],
                });
                gates.push(Gate {
                    id: format!("{}__not_b", gate.id),
                    kind: GateKind::Not,
                    operands: vec![operands[1]],
                });
                gates.push(Gate {
                    id: format!("{}__and", gate.id),
                    kind: GateKind::And,
                    operands: vec![Wire::Gate(base), Wire::Gate(base + 1)],
                });
                gates.push(Gate {
                    id: gate.id.clone(),
                    kind: GateKind::Not,
                    operands: vec![Wire::Gate(base + 2)],
                });
            } else {
                gates.push(Gate {
                    id: gate.id.clone(),
                    kind: gate.kind,
                    operands,
                });
            }
            remap.push(gates.len() - 1);
        }
        Circuit {
            inputs: self.inputs.clone(),
            gates,
            output: map(self.output, &remap),
        }
    }

    /// Renders the circuit back into the text format.
    pub fn to_text(&self) -> String {
        let name = |w: Wire| match w {
            Wire::Input(i) => self.inputs[i].clone(),
            Wire::Gate(g) => self.gates[g].id.clone(),
        };
        let mut out = String::new();
        for i in &self.inputs {
            writeln!(out, "in {i}").unwrap();
        }
        for g in &self.gates {
            let ops: Vec<String> = g.operands.iter().map(|&w| name(w)).collect();
            writeln!(out, "{} = {} {}", g.id, g.kind.keyword(), ops.join(" ")).unwrap();
        }
        writeln!(out, "out {}", name(self.output)).unwrap();
        out
    }
}

/// Longest input-to-output path, counting gates.
pub fn circuit_depth(c: &Circuit) -> usize {
    let mut depth = Vec::with_capacity(c.gates.len());
    let of = |w: Wire, depth: &Vec<usize>| match w {
        Wire::Input(_) => 0,
        Wire::Gate(g) => depth[g],
    };
    for gate in &c.gates {
        let d = 1 + gate
            .operands
            .iter()
            .map(|&w| of(w, &depth))
            .max()
            .unwrap_or(0);
        depth.push(d);
    }
    of(c.output, &depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let c = parse_circuit("in x1\nout x1\n").unwrap();
        assert_eq!((c.num_inputs(), c.gates().len(), c.depth()), (1, 0, 0));

        let c = parse_circuit("in x1\nin x2\ng1 = AND x1 x2\nout g1\n").unwrap();
        assert_eq!((c.gates().len(), c.depth()), (1, 1));

        assert!(matches!(
            parse_circuit("g1 = AND x1 g1"),
            Err(CircuitError::CycleDetected { line: 1, .. })
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_circuit("in x1\ng = XOR x1 x1\nout g"),
            Err(CircuitError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("in x1\nout x1\nout x1"),
            Err(CircuitError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_circuit("in x1\n\n# nothing\n"),
            Err(CircuitError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_circuit("in x1\ng = AND x1\nout g"),
            Err(CircuitError::FanInViolation {
                line: 2,
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_circuit("in x1\ng = NOT x1 x1\nout g"),
            Err(CircuitError::FanInViolation {
                line: 2,
                expected: 1,
                found: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_circuit("in x1\ng = AND x1 y\nout g"),
            Err(CircuitError::UndefinedWire { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("in x1\nout nope"),
            Err(CircuitError::UndefinedWire { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("in x1\nin x1\nout x1"),
            Err(CircuitError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("in x1\na = NOT b\nb = NOT a\nout a"),
            Err(CircuitError::CycleDetected { .. })
        ));
    }

    #[test]
    fn forward_references_are_sorted() {
        let c = parse_circuit("in a\nin b\nout top\ntop = NOT mid # late\nmid = OR a b\n").unwrap();
        assert_eq!(c.gates()[0].id, "mid");
        assert_eq!(c.gates()[1].id, "top");
        assert!(!c.eval(&[true, false]));
        assert!(c.eval(&[false, false]));
    }

    #[test]
    fn depth_examples() {
        let and2 = "in a\nin b\nin c\nin d\ng1 = AND a b\ng2 = AND c d\ng3 = AND g1 g2\nout g3";
        assert_eq!(parse_circuit(and2).unwrap().depth(), 2);
    }

    #[test]
    fn de_morgan_preserves_semantics() {
        let text = "in a\nin b\nin c\ng1 = OR a b\ng2 = AND g1 c\ng3 = OR g2 a\nout g3";
        let c = parse_circuit(text).unwrap();
        let d = c.de_morgan();
        assert!(d.gates().iter().all(|g| g.kind != GateKind::Or));
        for v in 0..8u32 {
            let bits: Vec<bool> = (0..3).map(|i| v >> i & 1 == 1).collect();
            assert_eq!(c.eval(&bits), d.eval(&bits));
        }
        assert_eq!(c.depth(), 3);
        assert_eq!(d.depth(), 7);
        // text form round-trips
        assert_eq!(parse_circuit(&d.to_text()).unwrap(), d);
    }
}

//! Orders in a quartic field as integer lattices in Hermite normal form,
//! with multiplicative closure, discriminants via the trace pairing, lattice
//! indices, and a Pohst–Zassenhaus round-2 step for p-maximality.

use super::{det4, solve_rational, NFElement, NumberField, DEGREE};
use crate::arith::{kernel_mod_p, Int, Rat};
use crate::{Error, Result};
use num::{Integer, One, Signed, ToPrimitive, Zero};

/// Row basis of a full lattice in the field: rows/den are power-basis
/// coordinates, rows in upper-triangular Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderZBasis {
    rows: Vec<Vec<Int>>,
    den: Int,
    disc: Int,
}

impl OrderZBasis {
    /// The ring Z[gens]: closure of the lattice spanned by 1 and the
    /// generators under pairwise products. Generators must be algebraic
    /// integers; the result must have full rank 4.
    pub fn from_generators(field: &NumberField, gens: &[NFElement]) -> Result<OrderZBasis> {
        for g in gens {
            let mp = field.minimal_polynomial(g);
            if !mp.is_integral() {
                return Err(Error::NonIntegralGenerator(format!("{mp:?}")));
            }
        }
        let mut elems: Vec<NFElement> = vec![NFElement::one()];
        elems.extend_from_slice(gens);
        // Include generator powers so the starting span is multiplicatively
        // reasonable; closure still iterates to a fixed point.
        let (mut rows, mut den) = lattice_from_elements(&elems);
        hnf(&mut rows);
        normalize_den(&mut rows, &mut den);
        for round in 0..=8 {
            if round == 8 {
                return Err(Error::OrderClosureDiverged(8));
            }
            let basis = basis_elements(&rows, &den);
            let mut products: Vec<NFElement> = basis.clone();
            for i in 0..basis.len() {
                for j in i..basis.len() {
                    products.push(field.mul(&basis[i], &basis[j]));
                }
            }
            let (mut new_rows, mut new_den) = lattice_from_elements(&products);
            hnf(&mut new_rows);
            normalize_den(&mut new_rows, &mut new_den);
            if new_rows == rows && new_den == den {
                break;
            }
            rows = new_rows;
            den = new_den;
        }
        let rank = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).count();
        if rank != DEGREE {
            return Err(Error::OrderNotFullRank(rank));
        }
        let mut order = OrderZBasis {
            rows,
            den,
            disc: Int::zero(),
        };
        order.disc = order.compute_disc(field)?;
        for g in gens {
            if !order.contains(g) {
                return Err(Error::Internal("closure lost a generator".into()));
            }
        }
        Ok(order)
    }

    /// The equation order Z[pi].
    pub fn equation_order(field: &NumberField) -> Result<OrderZBasis> {
        OrderZBasis::from_generators(field, &[field.gen()])
    }

    /// The maximal order, obtained from the equation order by round-2
    /// enlargement at every candidate prime. The candidate set must cover
    /// every prime whose square divides disc(m); the caller asserts this by
    /// checking the returned discriminant.
    pub fn maximal_order(field: &NumberField, candidate_primes: &[u64]) -> Result<OrderZBasis> {
        let mut order = OrderZBasis::equation_order(field)?;
        let mut primes: Vec<u64> = candidate_primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        for &r in &primes {
            loop {
                let enlarged = order.round2_step(field, r)?;
                if enlarged.disc == order.disc {
                    break;
                }
                order = enlarged;
            }
        }
        Ok(order)
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn disc(&self) -> &Int {
        &self.disc
    }

    /// Basis as field elements.
    pub fn basis(&self) -> Vec<NFElement> {
        basis_elements(&self.rows, &self.den)
    }

    /// Row matrix scaled by the common denominator, for serialization.
    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn contains(&self, e: &NFElement) -> bool {
        self.coords_of(e).is_some()
    }

    /// Integer coordinates of an element in this basis, if it lies in the
    /// lattice.
    pub fn coords_of(&self, e: &NFElement) -> Option<Vec<Int>> {
        let basis = self.basis();
        let mut aug: Vec<Vec<Rat>> = (0..DEGREE)
            .map(|r| {
                let mut row: Vec<Rat> = basis.iter().map(|b| b.coords()[r].clone()).collect();
                row.push(e.coords()[r].clone());
                row
            })
            .collect();
        let sol = solve_rational(&mut aug, DEGREE)?;
        let mut out = Vec::with_capacity(DEGREE);
        for s in sol {
            if !s.is_integer() {
                return None;
            }
            out.push(s.numer().clone());
        }
        Some(out)
    }

    /// Lattice index [super : sub] = |det| of the change-of-basis matrix.
    pub fn index_in(&self, superorder: &OrderZBasis) -> Result<Int> {
        let sup = superorder.basis();
        let mut change: Vec<Vec<Rat>> = Vec::with_capacity(DEGREE);
        for b in self.basis() {
            let mut aug: Vec<Vec<Rat>> = (0..DEGREE)
                .map(|r| {
                    let mut row: Vec<Rat> = sup.iter().map(|s| s.coords()[r].clone()).collect();
                    row.push(b.coords()[r].clone());
                    row
                })
                .collect();
            let sol = solve_rational(&mut aug, DEGREE).ok_or(Error::LatticeNotContained)?;
            if sol.iter().any(|c| !c.is_integer()) {
                return Err(Error::LatticeNotContained);
            }
            change.push(sol);
        }
        let m: [[Rat; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| change[i][j].clone()));
        let d = det4(&m);
        debug_assert!(d.is_integer());
        Ok(d.numer().abs())
    }

    /// Discriminant = det of the trace pairing on the basis.
    fn compute_disc(&self, field: &NumberField) -> Result<Int> {
        let basis = self.basis();
        let m: [[Rat; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| field.trace(&field.mul(&basis[i], &basis[j])))
        });
        let d = det4(&m);
        if !d.is_integer() {
            return Err(Error::Internal(format!("non-integral discriminant {d}")));
        }
        Ok(d.numer().clone())
    }

    /// One round-2 enlargement at prime r: the idealizer of the r-radical.
    fn round2_step(&self, field: &NumberField, r: u64) -> Result<OrderZBasis> {
        let basis = self.basis();
        let ri = Int::from(r);

        // Multiplication of order elements in order coordinates.
        let coords_in_order = |e: &NFElement| -> Result<Vec<Int>> {
            self.coords_of(e)
                .ok_or_else(|| Error::Internal("order closure violated in round-2".into()))
        };

        // Structure constants of the order basis mod r, so that powers can
        // be computed inside O/rO without exact big-integer blowup.
        let mut struct_mod: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); DEGREE]; DEGREE];
        for i in 0..DEGREE {
            for j in 0..DEGREE {
                let prod = coords_in_order(&field.mul(&basis[i], &basis[j]))?;
                struct_mod[i][j] = prod.iter().map(|x| mod_u64(x, r)).collect();
            }
        }
        let mul_mod_r = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; DEGREE];
            for i in 0..DEGREE {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..DEGREE {
                    if b[j] == 0 {
                        continue;
                    }
                    let c = (a[i] as u128 * b[j] as u128 % r as u128) as u64;
                    for (o, s) in out.iter_mut().zip(&struct_mod[i][j]) {
                        *o = ((*o as u128 + c as u128 * *s as u128) % r as u128) as u64;
                    }
                }
            }
            out
        };
        let pow_mod_r = |base: &[u64], mut e: u64| -> Vec<u64> {
            let mut acc = vec![0u64; DEGREE];
            // The identity element of O in order coordinates.
            acc.clone_from(&one_coords_mod(self, r));
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod_r(&acc, &b);
                }
                b = mul_mod_r(&b, &b);
                e >>= 1;
            }
            acc
        };

        // Frobenius matrix on O/rO: column i = coords of basis[i]^r.
        let mut frob_cols: Vec<Vec<u64>> = Vec::with_capacity(DEGREE);
        for i in 0..DEGREE {
            let mut unit = vec![0u64; DEGREE];
            unit[i] = 1;
            frob_cols.push(pow_mod_r(&unit, r));
        }
        let frob: Vec<Vec<u64>> = (0..DEGREE)
            .map(|row| (0..DEGREE).map(|col| frob_cols[col][row]).collect())
            .collect();
        // x -> x^(r^e) with r^e >= 4 kills exactly the radical.
        let mut power = frob.clone();
        let mut re = r;
        while re < DEGREE as u64 {
            power = mat_mul_mod(&power, &frob, r);
            re *= r;
        }
        let radical_basis = kernel_mod_p(&power, r);

        // Radical lattice J (in order coordinates): kernel lifts + r*O.
        let mut j_rows: Vec<Vec<Int>> = radical_basis
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        for i in 0..DEGREE {
            let mut row = vec![Int::zero(); DEGREE];
            row[i] = ri.clone();
            j_rows.push(row);
        }
        hnf(&mut j_rows);
        let j_rows: Vec<Vec<Int>> = j_rows
            .into_iter()
            .filter(|row| row.iter().any(|c| !c.is_zero()))
            .collect();
        debug_assert_eq!(j_rows.len(), DEGREE);
        let j_elems: Vec<NFElement> = j_rows
            .iter()
            .map(|row| order_combo(&basis, row))
            .collect();

        // V = { y in O : y J <= r J }, as the kernel of y -> (y j_k mod rJ).
        // For y = basis[i], express basis[i] * j_k in J-coordinates.
        let mut constraint: Vec<Vec<u64>> = Vec::new(); // rows: (k, jcoord) pairs; cols: i
        let mut entries: Vec<Vec<Vec<u64>>> = Vec::new(); // [i][k] -> J-coords mod r
        for b in &basis {
            let mut per_k = Vec::with_capacity(DEGREE);
            for j in &j_elems {
                let prod = field.mul(b, j);
                let oc = coords_in_order(&prod)?;
                let jc = j_coords(&j_rows, &oc)
                    .ok_or_else(|| Error::Internal("radical is not an ideal".into()))?;
                per_k.push(jc.iter().map(|x| mod_u64(x, r)).collect::<Vec<u64>>());
            }
            entries.push(per_k);
        }
        for k in 0..DEGREE {
            for coord in 0..DEGREE {
                constraint.push((0..DEGREE).map(|i| entries[i][k][coord]).collect());
            }
        }
        let v_basis = kernel_mod_p(&constraint, r);

        // O' = (1/r) * (lifted V + rO), converted back to power-basis rows.
        let mut new_rows: Vec<Vec<Int>> = Vec::new();
        for v in &v_basis {
            // Element sum_i v_i basis[i], in power-basis integer rows over den.
            let mut acc = vec![Int::zero(); DEGREE];
            for (i, &c) in v.iter().enumerate() {
                for (a, re_) in acc.iter_mut().zip(&self.rows[i]) {
                    *a += Int::from(c) * re_;
                }
            }
            new_rows.push(acc);
        }
        for row in &self.rows {
            new_rows.push(row.iter().map(|c| c * &ri).collect());
        }
        let mut den = &self.den * &ri;
        hnf(&mut new_rows);
        let mut rows: Vec<Vec<Int>> = new_rows
            .into_iter()
            .filter(|row| row.iter().any(|c| !c.is_zero()))
            .collect();
        normalize_den(&mut rows, &mut den);
        let mut out = OrderZBasis {
            rows,
            den,
            disc: Int::zero(),
        };
        out.disc = out.compute_disc(field)?;
        Ok(out)
    }
}

fn mod_u64(x: &Int, r: u64) -> u64 {
    x.mod_floor(&Int::from(r)).to_u64().unwrap()
}

/// Coordinates of 1 in the order basis, mod r.
fn one_coords_mod(order: &OrderZBasis, r: u64) -> Vec<u64> {
    let one = order
        .coords_of(&NFElement::one())
        .expect("an order contains 1");
    one.iter().map(|x| mod_u64(x, r)).collect()
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for (k, bk) in b.iter().enumerate() {
                acc = (acc + a[i][k] * bk[j]) % p;
            }
            out[i][j] = acc;
        }
    }
    out
}

fn order_combo(basis: &[NFElement], coeffs: &[Int]) -> NFElement {
    let mut acc = vec![Rat::zero(); DEGREE];
    for (b, c) in basis.iter().zip(coeffs) {
        for (a, bc) in acc.iter_mut().zip(b.coords()) {
            *a += Rat::from_integer(c.clone()) * bc;
        }
    }
    NFElement::from_coords(acc)
}

/// Coordinates of an order-coordinate vector in the J-row basis, if integral.
fn j_coords(j_rows: &[Vec<Int>], target: &[Int]) -> Option<Vec<Int>> {
    let mut aug: Vec<Vec<Rat>> = (0..DEGREE)
        .map(|r| {
            let mut row: Vec<Rat> = j_rows
                .iter()
                .map(|jr| Rat::from_integer(jr[r].clone()))
                .collect();
            row.push(Rat::from_integer(target[r].clone()));
            row
        })
        .collect();
    let sol = solve_rational(&mut aug, DEGREE)?;
    let mut out = Vec::with_capacity(DEGREE);
    for s in sol {
        if !s.is_integer() {
            return None;
        }
        out.push(s.numer().clone());
    }
    Some(out)
}

/// Common-denominator integer rows spanning the same lattice as the elements.
fn lattice_from_elements(elems: &[NFElement]) -> (Vec<Vec<Int>>, Int) {
    let mut den = Int::one();
    for e in elems {
        for c in e.coords() {
            den = den.lcm(c.denom());
        }
    }
    let rows = elems
        .iter()
        .map(|e| {
            e.coords()
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect()
        })
        .collect();
    (rows, den)
}

fn basis_elements(rows: &[Vec<Int>], den: &Int) -> Vec<NFElement> {
    rows.iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| {
            NFElement::from_coords(
                r.iter().map(|c| Rat::new(c.clone(), den.clone())).collect(),
            )
        })
        .collect()
}

fn normalize_den(rows: &mut Vec<Vec<Int>>, den: &mut Int) {
    let mut g = den.clone();
    for row in rows.iter() {
        for c in row {
            g = g.gcd(c);
        }
    }
    if g > Int::one() {
        for row in rows.iter_mut() {
            for c in row.iter_mut() {
                *c /= &g;
            }
        }
        *den /= &g;
    }
}

/// In-place row Hermite normal form (upper triangular, positive pivots,
/// entries above a pivot reduced into [0, pivot)). Zero rows sink.
pub(crate) fn hnf(rows: &mut Vec<Vec<Int>>) {
    if rows.is_empty() {
        return;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        // Euclidean elimination below pivot_row in this column.
        loop {
            let mut nonzero: Vec<usize> = (pivot_row..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let r = nonzero[0];
                rows.swap(pivot_row, r);
                break;
            }
            // Reduce the larger entries by the smallest.
            nonzero.sort_by_key(|&r| rows[r][col].abs());
            let smallest = nonzero[0];
            for &r in &nonzero[1..] {
                let q = div_round(&rows[r][col], &rows[smallest][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &rows[smallest][c];
                        rows[r][c] -= t;
                    }
                }
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for c in 0..cols {
                    rows[pivot_row][c] = -rows[pivot_row][c].clone();
                }
            }
            // Reduce entries above the pivot.
            let piv = rows[pivot_row][col].clone();
            for r in 0..pivot_row {
                let q = rows[r][col].div_floor(&piv);
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &rows[pivot_row][c];
                        rows[r][c] -= t;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    while rows.len() < DEGREE {
        rows.push(vec![Int::zero(); cols]);
    }
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
}

/// Rounded division minimizing the remainder.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    if (&r * 2i32).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

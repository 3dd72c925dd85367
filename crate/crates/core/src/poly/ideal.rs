use super::polynomial::Polynomial;
use super::ring::Ring;

/// Ideal given by generators; zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Self {
        for g in &generators {
            assert_eq!(
                g.nvars(),
                ring.nvars(),
                "generator in the wrong number of variables"
            );
            assert_eq!(g.field(), ring.field(), "generator over the wrong field");
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, generators }
    }

    /// Parses generators; panics on malformed input (for literals).
    pub fn from_strs(ring: &Ring, gens: &[&str]) -> Self {
        Ideal::new(ring.clone(), ring.polys(gens))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Same ideal with every generator mapped through `f`.
    pub fn map(&self, ring: Ring, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        Ideal::new(ring, self.generators.iter().map(f).collect())
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &Ideal) -> Self {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(self.ring.clone(), g)
    }

    pub fn to_text(&self) -> String {
        super::parse::format_ideal_file(self)
    }
}

use std::fmt;

/// Radial weight family of a one-coordinate chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeasureKind {
    /// `e^{−|z|²}/π` on the plane.
    Gaussian,
    /// `(2j+1)/π · (1+|z|²)^{−2j−2}` on the plane.
    FubiniStudy {
        j: f64,
    },
    /// `(2k−1)/π · (1−|z|²)^{2k−2}` on the unit disk.
    BergmanDisk {
        k: f64,
    },
    None,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartDomain {
    Plane,
    Disk { radius: f64 },
}

/// Closed-form probability measure `dν` on the chart, used by quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureSpec {
    pub kind: MeasureKind,
    pub domain: ChartDomain,
}

impl MeasureSpec {
    pub fn gaussian() -> Self {
        Self { kind: MeasureKind::Gaussian, domain: ChartDomain::Plane }
    }

    pub fn fubini_study(j: f64) -> Self {
        Self { kind: MeasureKind::FubiniStudy { j }, domain: ChartDomain::Plane }
    }

    pub fn bergman_disk(k: f64) -> Self {
        Self { kind: MeasureKind::BergmanDisk { k }, domain: ChartDomain::Disk { radius: 1.0 } }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MeasureKind::Gaussian => "gaussian",
            MeasureKind::FubiniStudy { .. } => "fubini-study",
            MeasureKind::BergmanDisk { .. } => "bergman-disk",
            MeasureKind::None => "none",
        }
    }

    /// Density with respect to Lebesgue measure `d²z`.
    pub fn density(&self, r2: f64) -> f64 {
        use std::f64::consts::PI;
        match self.kind {
            MeasureKind::Gaussian => (-r2).exp() / PI,
            MeasureKind::FubiniStudy { j } => (2.0 * j + 1.0) / PI * (1.0 + r2).powf(-2.0 * j - 2.0),
            MeasureKind::BergmanDisk { k } if r2 < 1.0 => (2.0 * k - 1.0) / PI * (1.0 - r2).powf(2.0 * k - 2.0),
            MeasureKind::BergmanDisk { .. } | MeasureKind::None => 0.0,
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MeasureKind::FubiniStudy { j } => write!(f, "fubini-study(j={j})"),
            MeasureKind::BergmanDisk { k } => write!(f, "bergman-disk(k={k})"),
            _ => f.write_str(self.kind_name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn densities_at_origin_and_boundary() {
        assert!((MeasureSpec::gaussian().density(0.0) - 1.0 / PI).abs() < 1e-15);
        assert!((MeasureSpec::fubini_study(0.5).density(0.0) - 2.0 / PI).abs() < 1e-15);
        assert!((MeasureSpec::fubini_study(1.0).density(1.0) - 3.0 / (16.0 * PI)).abs() < 1e-15);
        let b = MeasureSpec::bergman_disk(1.5);
        assert!((b.density(0.0) - 2.0 / PI).abs() < 1e-15);
        assert_eq!(b.density(1.0), 0.0);
        assert_eq!(b.kind_name(), "bergman-disk");
    }
}

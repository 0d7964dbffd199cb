use serde::{Deserialize, Serialize};

/// Pixel rectangle in screen coordinates. `right` and `bottom` are exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 4]", into = "[i32; 4]")]
pub struct Bounds {
    pub left: i32,
    pub top: i32,
    pub right: i32,
    pub bottom: i32,
}

impl Bounds {
    pub const fn new(left: i32, top: i32, right: i32, bottom: i32) -> Self {
        Self { left, top, right, bottom }
    }

    pub const fn width(&self) -> i64 {
        self.right as i64 - self.left as i64
    }

    pub const fn height(&self) -> i64 {
        self.bottom as i64 - self.top as i64
    }

    pub const fn area(&self) -> i64 {
        self.width() * self.height()
    }

    /// `left < right` and `top < bottom`.
    pub const fn is_well_formed(&self) -> bool {
        self.left < self.right && self.top < self.bottom
    }

    pub const fn fits_within(&self, width: i32, height: i32) -> bool {
        self.left >= 0 && self.top >= 0 && self.right <= width && self.bottom <= height
    }

    pub const fn translated(&self, dx: i32, dy: i32) -> Self {
        Self::new(self.left + dx, self.top + dy, self.right + dx, self.bottom + dy)
    }
}

impl From<[i32; 4]> for Bounds {
    fn from([left, top, right, bottom]: [i32; 4]) -> Self {
        Self { left, top, right, bottom }
    }
}

impl From<Bounds> for [i32; 4] {
    fn from(b: Bounds) -> Self {
        [b.left, b.top, b.right, b.bottom]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_and_containment() {
        let b = Bounds::new(10, 20, 110, 70);
        assert_eq!(b.area(), 5000);
        assert!(b.is_well_formed());
        assert!(b.fits_within(110, 70));
        assert!(!b.fits_within(109, 70));
        assert!(!Bounds::new(5, 5, 5, 10).is_well_formed());
    }
}

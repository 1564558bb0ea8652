use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Training parameters of the map.
///
/// `push_rate` is the learning rate applied (negated) to a winner of the
/// wrong class; `eps_beta` is the slope of the relevance logistic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub a_t: f64,
    pub lp: f64,
    pub beta: f64,
    pub age_wins: u64,
    pub e_b: f64,
    pub push_rate: f64,
    pub e_n: f64,
    pub eps_beta: f64,
    pub minwd: f64,
    pub epochs: u64,
    pub n_max: usize,
    pub seed: u64,
}

impl Default for HyperParams {
    fn default() -> Self {
        HyperParams {
            a_t: 0.95,
            lp: 0.005,
            beta: 0.1,
            age_wins: 1000,
            e_b: 0.05,
            push_rate: 0.01,
            e_n: 0.005,
            eps_beta: 0.05,
            minwd: 0.25,
            epochs: 10,
            n_max: 1000,
            seed: 0,
        }
    }
}

impl HyperParams {
    pub fn validate(&self) -> Result<()> {
        fn open_unit(name: &str, v: f64) -> Result<()> {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("{v} is outside (0, 1)")))
            }
        }
        fn non_negative(name: &str, v: f64) -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("{v} must be finite and >= 0")))
            }
        }

        open_unit("a_t", self.a_t)?;
        open_unit("beta", self.beta)?;
        non_negative("lp", self.lp)?;
        non_negative("e_b", self.e_b)?;
        non_negative("e_n", self.e_n)?;
        non_negative("push_rate", self.push_rate)?;
        non_negative("minwd", self.minwd)?;
        if !(self.eps_beta.is_finite() && self.eps_beta > 0.0) {
            return Err(Error::param("eps_beta", "slope must be > 0"));
        }
        if self.e_b > 1.0 {
            return Err(Error::param("e_b", format!("{} exceeds 1", self.e_b)));
        }
        if self.e_n > self.e_b {
            return Err(Error::param("e_n", "neighbor rate must not exceed e_b"));
        }
        if self.push_rate > self.e_b {
            return Err(Error::param("push_rate", "push rate must not exceed e_b"));
        }
        if self.age_wins == 0 {
            return Err(Error::param("age_wins", "must be positive"));
        }
        if self.epochs == 0 {
            return Err(Error::param("epochs", "must be positive"));
        }
        if self.n_max == 0 {
            return Err(Error::param("n_max", "must be positive"));
        }
        Ok(())
    }

    /// Minimum wins a node needs per `age_wins` cycle to survive a reset.
    pub fn removal_threshold(&self) -> f64 {
        self.lp * self.age_wins as f64
    }

    /// Parses the flat `key = value` parameter format. Blank lines and
    /// `#` comments are ignored; unknown keys are an error. Keys not present
    /// keep their value from `base`.
    pub fn parse_kv(text: &str, base: HyperParams) -> Result<HyperParams> {
        let mut p = base;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::param(line, format!("line {}: expected key = value", idx + 1))
            })?;
            p.set(key.trim(), value.trim())?;
        }
        Ok(p)
    }

    /// Sets one parameter from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::param(key, format!("cannot parse `{value}`")))
        }
        match key {
            "a_t" => self.a_t = num(key, value)?,
            "lp" => self.lp = num(key, value)?,
            "beta" => self.beta = num(key, value)?,
            "age_wins" => self.age_wins = num(key, value)?,
            "e_b" => self.e_b = num(key, value)?,
            "push_rate" | "e_w" => self.push_rate = num(key, value)?,
            "e_n" => self.e_n = num(key, value)?,
            "eps_beta" => self.eps_beta = num(key, value)?,
            "minwd" => self.minwd = num(key, value)?,
            "epochs" => self.epochs = num(key, value)?,
            "n_max" => self.n_max = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            _ => return Err(Error::param(key, "unknown parameter")),
        }
        Ok(())
    }

    /// Sets a parameter from a number, rounding integer-valued ones.
    pub fn set_value(&mut self, key: &str, value: f64) -> Result<()> {
        let count = |v: f64| v.round().max(1.0) as u64;
        match key {
            "a_t" => self.a_t = value,
            "lp" => self.lp = value,
            "beta" => self.beta = value,
            "age_wins" => self.age_wins = count(value),
            "e_b" => self.e_b = value,
            "push_rate" | "e_w" => self.push_rate = value,
            "e_n" => self.e_n = value,
            "eps_beta" => self.eps_beta = value,
            "minwd" => self.minwd = value,
            "epochs" => self.epochs = count(value),
            "n_max" => self.n_max = count(value) as usize,
            _ => return Err(Error::param(key, "not a numeric training parameter")),
        }
        Ok(())
    }

    /// Inverse of [`HyperParams::parse_kv`].
    pub fn to_kv(&self) -> String {
        format!(
            "a_t = {}\nlp = {}\nbeta = {}\nage_wins = {}\ne_b = {}\npush_rate = {}\ne_n = {}\neps_beta = {}\nminwd = {}\nepochs = {}\nn_max = {}\nseed = {}\n",
            self.a_t,
            self.lp,
            self.beta,
            self.age_wins,
            self.e_b,
            self.push_rate,
            self.e_n,
            self.eps_beta,
            self.minwd,
            self.epochs,
            self.n_max,
            self.seed
        )
    }
}

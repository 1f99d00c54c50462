#ifndef ENVRISK_NORMAL_HPP
#define ENVRISK_NORMAL_HPP

namespace envrisk {

// Standard normal pdf.
double norm_pdf(double x);

// Standard normal cdf via the complementary error function; accurate in both
// tails.
double norm_cdf(double x);

// Upper tail P(N > x).
double norm_sf(double x);

// Inverse cdf: rational approximation (Wichura-style, three regimes) polished
// by one Newton step. Requires p in (0, 1).
double norm_ppf(double p);

// Tail integral of the survival function, E[(N - q)^+] = pdf(q) - q * sf(q).
double norm_tail_integral(double q);

} // namespace envrisk

#endif

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "piforge/families.hpp"

namespace piforge {

/// sum_{n<p} a_n (lin0 + lin1 n) / base^n == rhs_mult p (disc/p)  (mod p^3),
/// a_n the integer-valued HYP coefficient.
struct CongruenceClaim {
  std::string id;
  FamilySpec family;
  BigInt lin0, lin1;
  BigInt base;
  BigInt rhs_mult;
  BigInt character_disc = -3;
  std::string linked;  // id of the divergent source row behind the claim
  std::string notes;
};

bool is_prime(unsigned long n);
/// Euler's criterion; throws NotOddPrime.
int legendre(const BigInt& a, unsigned long p);
/// Modular fast path.
bool check_claim(const CongruenceClaim& c, unsigned long p);
/// Left side reduced mod p^3 (fast path) and the expected residue.
std::pair<BigInt, BigInt> claim_residues(const CongruenceClaim& c, unsigned long p);
/// Exact rational sum reduced mod p^3 afterwards (oracle-style slow path).
BigInt exact_residue(const CongruenceClaim& c, unsigned long p);
std::vector<std::pair<unsigned long, bool>> sweep(const CongruenceClaim& c, unsigned long pmax, unsigned workers = 1);

}  // namespace piforge

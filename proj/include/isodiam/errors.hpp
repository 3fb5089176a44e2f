#pragma once

#include <stdexcept>
#include <string>

namespace isodiam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// input spans a proper affine subspace; carries the rank that was found
class DegenerateInput : public Error {
 public:
  DegenerateInput(const std::string& what, int rank_found)
      : Error(what), rank_found(rank_found) {}
  int rank_found;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

// polar() requires the origin strictly inside; reports the violated facet
class OriginNotInterior : public Error {
 public:
  OriginNotInterior(const std::string& what, int facet_index)
      : Error(what), facet_index(facet_index) {}
  int facet_index;
};

class RankDeficientBasis : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class MaxIterations : public Error {
 public:
  MaxIterations(const std::string& what, double achieved_gap)
      : Error(what), achieved_gap(achieved_gap) {}
  double achieved_gap;
};

class NotContainedInBall : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class CombinatorialBlowup : public Error {
 public:
  using Error::Error;
};

class NotInBehrendPosition : public Error {
 public:
  using Error::Error;
};

class InvalidQuery : public Error {
 public:
  using Error::Error;
};

class UnknownWitness : public Error {
 public:
  using Error::Error;
};

// malformed JSON, wrong dimensions, unreadable files
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace isodiam

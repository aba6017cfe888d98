// three ships without bundled type declarations; the binding layer only
// needs a loose surface, so an any-typed module keeps the build lean.
declare module "three";

public class AddFunction {
    public static void main(String[] args) throws Exception {
        int total = Calc.add(3, 4);
        System.out.println(total);
        System.out.println(Calc.add(total, -10));
    }
}

import java.util.ArrayList;
import java.util.Arrays;

public class ListPrintDemo {
    public static void main(String[] args) throws Exception {
        ArrayList<Integer> myName = new ArrayList<Integer>(Arrays.asList(3, 1, 4));
        System.out.println(myName);
        myName.add(1);
        myName.set(0, 9);
        System.out.println(myName);
        System.out.println(myName.indexOf(4));
        System.out.println(myName.size() > 3);
        System.out.println(myName.size() > 4);
        ArrayList<Integer> empty = new ArrayList<Integer>();
        System.out.println(empty);
    }
}
